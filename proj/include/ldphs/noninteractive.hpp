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

// Non-interactive selection by noised log-likelihood scores.
//
// Users are split into k groups. A user in group i holding symbol a sends
// log(gamma(a) / q_i(a)) plus Laplace noise; the curator averages each group
// into a score C_i and returns the argmin. E[C_i] = KL(q*||q_i) - KL(q*||gamma)
// up to a 2*L*beta error term, so the closest hypothesis has the smallest
// expected score.
//
// run_noninteractive() first flattens the instance (every user relabels
// their own sample), which bounds every log-ratio against the uniform
// reference by L <= log(2(k+1)).

#ifndef LDPHS_NONINTERACTIVE_HPP_
#define LDPHS_NONINTERACTIVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"
#include "ldphs/flatten.hpp"
#include "ldphs/ldp.hpp"
#include "ldphs/random.hpp"
#include "ldphs/transcript.hpp"

namespace ldphs {

// max over i and over gamma-positive a of |log(gamma(a) / q_i(a))|.
inline double compute_L(const HypothesisSet& q, const Dist& gamma) {
  if (gamma.size() != q.alphabet_size()) {
    throw InvalidArgument("reference and hypotheses use different alphabets");
  }
  double bound = 0.0;
  for (std::size_t a = 0; a < gamma.size(); ++a) {
    for (const Dist& qi : q) {
      if (gamma[a] == 0.0 && qi[a] == 0.0) continue;
      if (gamma[a] == 0.0 || qi[a] == 0.0) {
        throw ProtocolViolation("unbounded log-ratio at symbol " +
                                std::to_string(a));
      }
      bound = std::max(bound, std::abs(std::log(gamma[a] / qi[a])));
    }
  }
  return bound;
}

// Slack for comparing a recomputed log-ratio against L.
inline bool within_bound(double log_ratio, double bound) {
  return std::abs(log_ratio) <= bound * (1.0 + 1e-12) + 1e-15;
}

// One user's message: the log-ratio at their symbol plus Laplace noise.
inline double user_message(std::size_t a, const Dist& q, const Dist& gamma,
                           double bound, double epsilon, NoiseMode mode,
                           Rng& rng) {
  require_same_alphabet(q, gamma);
  if (a >= q.size()) throw InvalidArgument("sample outside the alphabet");
  if (q[a] <= 0.0 || gamma[a] <= 0.0) {
    throw ProtocolViolation(
        "zero probability at symbol " + std::to_string(a) +
        "; the instance was not flattened or the reference is degenerate");
  }
  const double log_ratio = std::log(gamma[a] / q[a]);
  if (!within_bound(log_ratio, bound)) {
    throw ProtocolViolation("log-ratio " + std::to_string(log_ratio) +
                            " exceeds the bound L = " + std::to_string(bound));
  }
  return log_ratio + laplace_noise(bound, epsilon, mode, rng);
}

// Validated inputs of the grouped likelihood test. Users are assigned to
// groups round-robin (user j -> group j mod k), so sizes differ by <= 1.
class NiConfig {
 public:
  NiConfig(HypothesisSet hypotheses, Dist gamma, double bound, std::size_t n,
           PrivacyParams privacy)
      : hypotheses_(std::move(hypotheses)),
        gamma_(std::move(gamma)),
        bound_(bound),
        n_(n),
        privacy_(privacy) {
    privacy_.validate();
    if (n_ < hypotheses_.k()) {
      throw InvalidArgument("need at least one user per hypothesis: n = " +
                            std::to_string(n_) + " < k = " +
                            std::to_string(hypotheses_.k()));
    }
    if (!(bound_ >= 0.0) || !std::isfinite(bound_)) {
      throw InvalidArgument("L must be finite and nonnegative");
    }
    const double needed = compute_L(hypotheses_, gamma_);
    if (!within_bound(needed, bound_)) {
      throw InvalidArgument("L = " + std::to_string(bound_) +
                            " is below the instance's log-ratio bound " +
                            std::to_string(needed));
    }
  }

  const HypothesisSet& hypotheses() const { return hypotheses_; }
  const Dist& gamma() const { return gamma_; }
  double bound() const { return bound_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return hypotheses_.k(); }
  const PrivacyParams& privacy() const { return privacy_; }

  std::size_t group_of(std::size_t user) const { return user % k(); }
  std::size_t group_size(std::size_t group) const {
    return n_ / k() + (group < n_ % k() ? 1 : 0);
  }
  double noise_scale() const {
    return laplace_scale(bound_, privacy_.epsilon, privacy_.noise_mode);
  }

 private:
  HypothesisSet hypotheses_;
  Dist gamma_;
  double bound_;
  std::size_t n_;
  PrivacyParams privacy_;
};

struct NiResult {
  std::size_t chosen = 0;
  std::vector<double> scores;
  Transcript transcript;
  double bound = 0.0;             // L
  std::size_t target_size = 0;    // N' (N when no flattening ran)
};

// Lowest index wins ties.
inline std::size_t argmin_index(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

// The grouped likelihood test on samples already expressed in gamma's
// alphabet. samples[j] is user j's symbol.
inline NiResult run_likelihood_test(const NiConfig& config,
                                    std::span<const std::size_t> samples,
                                    Rng& rng) {
  if (samples.size() != config.n()) {
    throw InvalidArgument("expected " + std::to_string(config.n()) +
                          " samples, got " + std::to_string(samples.size()));
  }
  const std::size_t k = config.k();
  const std::size_t n_symbols = config.gamma().size();
  // log(gamma(b) / q_i(b)) for every group and symbol, NaN where undefined.
  std::vector<double> log_ratio(k * n_symbols);
  for (std::size_t i = 0; i < k; ++i) {
    const Dist& qi = config.hypotheses()[i];
    for (std::size_t b = 0; b < n_symbols; ++b) {
      const double g = config.gamma()[b];
      log_ratio[i * n_symbols + b] =
          (g > 0.0 && qi[b] > 0.0) ? std::log(g / qi[b]) : std::nan("");
    }
  }
  const double scale = config.noise_scale();
  const double epsilon = config.privacy().epsilon;

  NiResult result;
  result.bound = config.bound();
  result.target_size = n_symbols;
  std::vector<double> sums(k, 0.0);
  Transcript& transcript = result.transcript;
  for (std::size_t user = 0; user < samples.size(); ++user) {
    const std::size_t group = config.group_of(user);
    const std::size_t b = samples[user];
    if (b >= n_symbols) throw InvalidArgument("sample outside the alphabet");
    const double r = log_ratio[group * n_symbols + b];
    if (std::isnan(r)) {
      throw ProtocolViolation("zero probability at symbol " +
                              std::to_string(b) + " for hypothesis " +
                              std::to_string(group));
    }
    sums[group] += r + sample_laplace(scale, rng);
    transcript.ledger.record(user, 0, Mechanism::kLaplace, epsilon);
  }
  result.scores.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    result.scores[i] = sums[i] / static_cast<double>(config.group_size(i));
  }
  result.chosen = argmin_index(result.scores);
  RoundRecord round;
  round.users.push_back(UserRange{0, samples.size()});
  round.messages = samples.size();
  transcript.rounds.push_back(std::move(round));
  transcript.chosen = result.chosen;
  transcript.samples_used = samples.size();
  return result;
}

// A flattened instance: the map, the pushed-forward hypotheses, the uniform
// reference on [N'] and the exact log-ratio bound.
struct FlattenedInstance {
  FlattenMap map;
  HypothesisSet hypotheses;
  Dist gamma;
  double bound;

  explicit FlattenedInstance(const HypothesisSet& q)
      : map(build_flatten_map(q)),
        hypotheses(map.push_forward(q)),
        gamma(Dist::uniform(map.target_size())),
        bound(compute_L(hypotheses, gamma)) {}
};

// Flattening followed by the grouped likelihood test with gamma uniform on
// [N']. samples[j] is user j's raw symbol in [N].
inline NiResult run_noninteractive(const HypothesisSet& q,
                                   std::span<const std::size_t> samples,
                                   const PrivacyParams& privacy, Rng& rng) {
  if (samples.size() < q.k()) {
    throw InvalidArgument("need n >= k users: n = " +
                          std::to_string(samples.size()) + ", k = " +
                          std::to_string(q.k()));
  }
  const FlattenedInstance flat(q);
  NiConfig config(flat.hypotheses, flat.gamma, flat.bound, samples.size(),
                  privacy);
  std::vector<std::size_t> relabeled(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    relabeled[j] = flat.map.apply(samples[j], rng);
  }
  return run_likelihood_test(config, relabeled, rng);
}

// E[C_i] computed exactly: sum_b p(b) log(gamma(b) / q_i(b)).
inline std::vector<double> expected_scores(const HypothesisSet& q,
                                           const Dist& gamma, const Dist& p) {
  require_same_alphabet(gamma, p);
  std::vector<double> out(q.k(), 0.0);
  for (std::size_t i = 0; i < q.k(); ++i) {
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (p[b] == 0.0) continue;
      out[i] += p[b] * std::log(gamma[b] / q[i][b]);
    }
  }
  return out;
}

}  // namespace ldphs

#endif  // LDPHS_NONINTERACTIVE_HPP_
