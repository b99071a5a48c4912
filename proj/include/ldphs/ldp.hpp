// Copyright 2026 The ldphs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Local randomizers (randomized response, Laplace noise), the affine
// debiasing of randomized-response averages, and a per-user privacy ledger.

#ifndef LDPHS_LDP_HPP_
#define LDPHS_LDP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ldphs/error.hpp"
#include "ldphs/random.hpp"

namespace ldphs {

// Laplace scale convention for a message bounded in [-L, L].
//
// kStrict uses scale 2L/eps, which is eps-DP for the full range of width 2L.
// kPaperExact uses scale L/eps, reproducing the published constants; on a
// range of width 2L that choice is only 2*eps-DP.
enum class NoiseMode { kStrict, kPaperExact };

inline std::string_view to_string(NoiseMode mode) {
  return mode == NoiseMode::kStrict ? "strict" : "paper";
}

inline NoiseMode parse_noise_mode(std::string_view s) {
  if (s == "strict") return NoiseMode::kStrict;
  if (s == "paper" || s == "paper-exact") return NoiseMode::kPaperExact;
  throw InvalidArgument("unknown noise mode '" + std::string(s) +
                        "' (expected strict or paper)");
}

inline constexpr double kMaxEpsilon = 10.0;

struct PrivacyParams {
  double epsilon = 1.0;
  NoiseMode noise_mode = NoiseMode::kStrict;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon <= kMaxEpsilon)) {
      throw InvalidArgument("epsilon must be in (0, 10], got " +
                            std::to_string(epsilon));
    }
  }
};

inline double rr_keep_probability(double epsilon) {
  // e^eps / (1 + e^eps), written to stay finite for large eps.
  return 1.0 / (1.0 + std::exp(-epsilon));
}

// Reports `bit` with probability e^eps/(1+e^eps), its complement otherwise.
inline int randomized_response(int bit, double epsilon, Rng& rng) {
  if (bit != 0 && bit != 1) throw InvalidArgument("randomized response input must be 0 or 1");
  return bernoulli(rng, rr_keep_probability(epsilon)) ? bit : 1 - bit;
}

// P(output | input) for randomized response.
inline double rr_likelihood(int output, int input, double epsilon) {
  const double keep = rr_keep_probability(epsilon);
  return output == input ? keep : 1.0 - keep;
}

// Unbiased estimate of P(bit = 1) from the mean of randomized-response
// outputs. Not clamped to [0, 1].
inline double rr_debias(double mean_of_outputs, double epsilon) {
  const double e = std::exp(epsilon);
  return (e + 1.0) / (e - 1.0) * (mean_of_outputs - 1.0 / (e + 1.0));
}

// Inverse of rr_debias: the expected output mean when the true mass is p.
inline double rr_expected_mean(double p, double epsilon) {
  const double keep = rr_keep_probability(epsilon);
  return p * keep + (1.0 - p) * (1.0 - keep);
}

inline double laplace_scale(double sensitivity, double epsilon,
                            NoiseMode mode) {
  if (sensitivity < 0.0) throw InvalidArgument("sensitivity must be >= 0");
  const double range_factor = mode == NoiseMode::kStrict ? 2.0 : 1.0;
  return range_factor * sensitivity / epsilon;
}

inline double laplace_density(double x, double scale) {
  return std::exp(-std::abs(x) / scale) / (2.0 * scale);
}

// Laplace(0, scale) by inverting the CDF of one uniform draw.
inline double sample_laplace(double scale, Rng& rng) {
  if (scale == 0.0) return 0.0;
  const double u = uniform_open01(rng) - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

// Noise for a statistic bounded by `sensitivity` in absolute value.
inline double laplace_noise(double sensitivity, double epsilon, NoiseMode mode,
                            Rng& rng) {
  return sample_laplace(laplace_scale(sensitivity, epsilon, mode), rng);
}

enum class Mechanism : std::uint8_t { kRandomizedResponse, kLaplace };

inline std::string_view to_string(Mechanism m) {
  return m == Mechanism::kRandomizedResponse ? "randomized_response"
                                             : "laplace";
}

struct LedgerCheck {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Who spoke, when, through which mechanism, at what privacy cost.
class PrivacyLedger {
 public:
  struct Entry {
    std::size_t user;
    std::size_t round;
    Mechanism mechanism;
    double epsilon;
  };

  void record(std::size_t user, std::size_t round, Mechanism mechanism,
              double epsilon) {
    entries_.push_back(Entry{user, round, mechanism, epsilon});
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Fails when a user's total spend exceeds `budget` or a user shows up in
  // more than one round.
  LedgerCheck check(double budget) const {
    std::vector<Entry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Entry& a, const Entry& b) {
                return a.user != b.user ? a.user < b.user : a.round < b.round;
              });
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      double spend = 0.0;
      while (j < sorted.size() && sorted[j].user == sorted[i].user) {
        if (sorted[j].round != sorted[i].round) {
          return {false, "user " + std::to_string(sorted[i].user) +
                             " participated in rounds " +
                             std::to_string(sorted[i].round) + " and " +
                             std::to_string(sorted[j].round)};
        }
        spend += sorted[j].epsilon;
        ++j;
      }
      if (spend > budget * (1.0 + 1e-12)) {
        return {false, "user " + std::to_string(sorted[i].user) + " spent " +
                           std::to_string(spend) + " > budget " +
                           std::to_string(budget)};
      }
      i = j;
    }
    return {};
  }

  // Throws ProtocolViolation where check() would fail.
  void enforce(double budget) const {
    LedgerCheck c = check(budget);
    if (!c) throw ProtocolViolation(c.reason);
  }

  // True iff users 0..n_users-1 each appear exactly once, at cost epsilon,
  // and nobody else appears.
  bool each_user_spent_exactly_once(std::size_t n_users,
                                    double epsilon) const {
    if (entries_.size() != n_users) return false;
    std::vector<std::uint8_t> seen(n_users, 0);
    for (const Entry& e : entries_) {
      if (e.user >= n_users || seen[e.user] != 0) return false;
      if (std::abs(e.epsilon - epsilon) > 1e-12 * std::max(1.0, epsilon)) {
        return false;
      }
      seen[e.user] = 1;
    }
    return true;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace ldphs

#endif  // LDPHS_LDP_HPP_
