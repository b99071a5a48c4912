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

// Discrete distributions over a finite alphabet {0, ..., N-1}, the distances
// between them, and generators for test instances.

#ifndef LDPHS_DIST_HPP_
#define LDPHS_DIST_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldphs/error.hpp"
#include "ldphs/random.hpp"

namespace ldphs {

inline constexpr double kProbabilitySumTolerance = 1e-9;

// An immutable probability vector. Construction normalizes, so any
// nonnegative vector with positive sum is accepted.
class Dist {
 public:
  static Dist from_weights(std::span<const double> weights) {
    if (weights.empty()) {
      throw InvalidArgument("distribution needs a nonempty alphabet");
    }
    double total = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w)) {
        throw InvalidArgument("distribution weight is not finite");
      }
      if (w < 0.0) {
        throw InvalidArgument("distribution weight is negative");
      }
      total += w;
    }
    if (!(total > 0.0)) {
      throw InvalidArgument("distribution weights sum to zero");
    }
    Dist d;
    d.weights_.reserve(weights.size());
    for (double w : weights) d.weights_.push_back(w / total);
    d.build_cumulative();
    return d;
  }

  // Keeps the given masses verbatim when they already sum to 1 up to
  // rounding, so exact floors computed by the caller survive.
  static Dist from_probabilities(std::vector<double> probs) {
    double total = 0.0;
    for (double w : probs) {
      if (!std::isfinite(w) || w < 0.0) {
        throw InvalidArgument("probability is negative or not finite");
      }
      total += w;
    }
    if (probs.empty() || std::abs(total - 1.0) > 1e-9) {
      return from_weights(probs);
    }
    Dist d;
    d.weights_ = std::move(probs);
    d.build_cumulative();
    return d;
  }

  static Dist uniform(std::size_t n) {
    return from_weights(std::vector<double>(n, 1.0));
  }

  static Dist point_mass(std::size_t n, std::size_t at) {
    if (at >= n) throw InvalidArgument("point mass outside the alphabet");
    std::vector<double> w(n, 0.0);
    w[at] = 1.0;
    return from_weights(w);
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t a) const { return weights_[a]; }
  std::span<const double> weights() const { return weights_; }

  // Inverse-CDF draw by binary search over the cumulative table.
  std::size_t sample(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t a = static_cast<std::size_t>(it - cumulative_.begin());
    if (a >= weights_.size()) a = weights_.size() - 1;
    // Never return a zero-mass symbol, even at a rounding boundary.
    while (weights_[a] == 0.0 && a > 0) --a;
    return a;
  }

  friend bool operator==(const Dist& a, const Dist& b) {
    return a.weights_ == b.weights_;
  }

 private:
  Dist() = default;

  void build_cumulative() {
    cumulative_.resize(weights_.size());
    double running = 0.0;
    for (std::size_t a = 0; a < weights_.size(); ++a) {
      running += weights_[a];
      cumulative_[a] = running;
    }
    // Pin the top of the table so u in [0,1) always lands inside it.
    for (std::size_t a = weights_.size(); a-- > 0;) {
      cumulative_[a] = 1.0;
      if (weights_[a] > 0.0) break;
    }
  }

  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

inline Dist make_dist(std::span<const double> weights) {
  return Dist::from_weights(weights);
}

inline Dist make_dist(std::initializer_list<double> weights) {
  return Dist::from_weights(std::span<const double>(weights.begin(),
                                                    weights.size()));
}

inline std::size_t sample(const Dist& d, Rng& rng) { return d.sample(rng); }

inline void require_same_alphabet(const Dist& p, const Dist& q) {
  if (p.size() != q.size()) {
    throw InvalidArgument("alphabet mismatch: " + std::to_string(p.size()) +
                          " vs " + std::to_string(q.size()));
  }
}

// Half the L1 distance.
inline double tv_distance(const Dist& p, const Dist& q) {
  require_same_alphabet(p, q);
  double l1 = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) l1 += std::abs(p[a] - q[a]);
  return std::min(1.0, 0.5 * l1);
}

// KL(q || r) in nats. 0 log 0 = 0; returns +infinity when q puts mass where
// r does not.
inline double kl_divergence(const Dist& q, const Dist& r) {
  require_same_alphabet(q, r);
  double total = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (q[a] == 0.0) continue;
    if (r[a] == 0.0) return std::numeric_limits<double>::infinity();
    total += q[a] * std::log(q[a] / r[a]);
  }
  return std::max(0.0, total);
}

class HypothesisSet {
 public:
  explicit HypothesisSet(std::vector<Dist> hypotheses)
      : hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.empty()) {
      throw InvalidArgument("hypothesis set must not be empty");
    }
    for (const Dist& q : hypotheses_) require_same_alphabet(hypotheses_[0], q);
  }

  std::size_t k() const { return hypotheses_.size(); }
  std::size_t alphabet_size() const { return hypotheses_[0].size(); }
  const Dist& operator[](std::size_t i) const { return hypotheses_[i]; }
  const std::vector<Dist>& hypotheses() const { return hypotheses_; }
  auto begin() const { return hypotheses_.begin(); }
  auto end() const { return hypotheses_.end(); }

  double min_pairwise_tv() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k(); ++i) {
      for (std::size_t j = i + 1; j < k(); ++j) {
        best = std::min(best, tv_distance(hypotheses_[i], hypotheses_[j]));
      }
    }
    return best;
  }

 private:
  std::vector<Dist> hypotheses_;
};

struct InstanceMeta {
  std::optional<std::size_t> true_index;
  std::optional<double> separation;  // min pairwise TV promised for Q
  std::optional<double> beta;        // min TV from p to Q, when p is known
};

// A hypothesis set plus what a simulation knows about the data source. The
// data distribution `truth` is optional: when absent, `meta.true_index`
// names the member of Q that generates the samples.
struct Instance {
  HypothesisSet hypotheses;
  InstanceMeta meta;
  std::optional<Dist> truth;

  const Dist& source() const {
    if (truth) return *truth;
    if (!meta.true_index) {
      throw InvalidArgument("instance names neither a true index nor p");
    }
    return hypotheses[*meta.true_index];
  }
};

struct NearestHypothesis {
  double beta;
  std::size_t index;
};

// Smallest TV from p to a member of Q; ties go to the lowest index.
inline NearestHypothesis min_tv_to_set(const Dist& p, const HypothesisSet& q) {
  NearestHypothesis best{tv_distance(p, q[0]), 0};
  for (std::size_t i = 1; i < q.k(); ++i) {
    const double d = tv_distance(p, q[i]);
    if (d < best.beta) best = {d, i};
  }
  return best;
}

inline constexpr std::size_t kMaxHardInstanceDimension = 16;

// Coordinate j of symbol x is +1 when bit j of x is set, -1 otherwise
// (little-endian).
inline int hard_instance_coordinate(std::size_t x, std::size_t j) {
  return ((x >> j) & 1U) != 0 ? +1 : -1;
}

// The 2d distributions p_{b,j} on {+-1}^d: uniform except that coordinate j
// equals b with probability 1/2 + alpha. Hypothesis 2j is b = +1 and
// hypothesis 2j+1 is b = -1.
inline Instance gen_hard_instance(std::size_t d, double alpha) {
  if (d == 0 || d > kMaxHardInstanceDimension) {
    throw InvalidArgument("hard instance dimension must be in [1, 16]");
  }
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    throw InvalidArgument("hard instance alpha must be in [0, 1/2)");
  }
  const std::size_t n = std::size_t{1} << d;
  const double base = 1.0 / static_cast<double>(n);
  std::vector<Dist> hypotheses;
  hypotheses.reserve(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (int b : {+1, -1}) {
      std::vector<double> w(n);
      for (std::size_t x = 0; x < n; ++x) {
        w[x] = base * (1.0 + 2.0 * alpha * b * hard_instance_coordinate(x, j));
      }
      hypotheses.push_back(Dist::from_weights(w));
    }
  }
  InstanceMeta meta;
  meta.separation = alpha;
  return Instance{HypothesisSet(std::move(hypotheses)), meta, std::nullopt};
}

inline constexpr std::size_t kRejectionCap = 100000;

// Flat Dirichlet draw: normalized exponentials.
inline Dist random_simplex_point(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = -std::log(uniform_open01(rng));
  return Dist::from_weights(w);
}

// k distributions on [N] with pairwise TV >= alpha, by rejection sampling
// from the simplex. Throws Infeasible once kRejectionCap draws are spent.
inline Instance gen_random_separated(std::size_t k, std::size_t n, double alpha,
                                     Rng& rng) {
  if (k == 0 || n == 0) {
    throw InvalidArgument("need k >= 1 and N >= 1");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("separation must be in [0, 1]");
  }
  std::vector<Dist> accepted;
  accepted.reserve(k);
  std::size_t attempts = 0;
  while (accepted.size() < k) {
    if (attempts++ >= kRejectionCap) {
      throw Infeasible("could not place " + std::to_string(k) +
                       " distributions with pairwise TV >= " +
                       std::to_string(alpha) + " on an alphabet of size " +
                       std::to_string(n));
    }
    Dist candidate = random_simplex_point(n, rng);
    bool ok = true;
    for (const Dist& q : accepted) {
      if (tv_distance(candidate, q) < alpha) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(std::move(candidate));
  }
  InstanceMeta meta;
  meta.separation = alpha;
  return Instance{HypothesisSet(std::move(accepted)), meta, std::nullopt};
}

// (1 - w) a + w b.
inline Dist mixture(const Dist& a, const Dist& b, double w) {
  require_same_alphabet(a, b);
  std::vector<double> out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    out[x] = (1.0 - w) * a[x] + w * b[x];
  }
  return Dist::from_weights(out);
}

}  // namespace ldphs

#endif  // LDPHS_DIST_HPP_
