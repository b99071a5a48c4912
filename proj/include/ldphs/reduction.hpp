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

// Sequentially interactive private hypothesis selection: a maximum
// selection algorithm whose comparator is a private Scheffé test run on a
// fresh group of users for every query. A t-round selection algorithm
// becomes a t-round protocol in which no user speaks twice.

#ifndef LDPHS_REDUCTION_HPP_
#define LDPHS_REDUCTION_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ldphs/comparator.hpp"
#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"
#include "ldphs/ldp.hpp"
#include "ldphs/max_select.hpp"
#include "ldphs/random.hpp"
#include "ldphs/scheffe.hpp"
#include "ldphs/transcript.hpp"

namespace ldphs {

// n users, each holding one independent draw from p. Users are handed out
// in id order and never twice. Draws happen when a user is handed out,
// which has the same law as drawing everything up front.
class UserPopulation {
 public:
  UserPopulation(Dist p, std::size_t n, std::uint64_t seed)
      : p_(std::move(p)), n_(n), rng_(derive_seed(seed, "population", 0)) {}

  std::size_t size() const { return n_; }
  std::size_t consumed() const { return next_; }
  std::size_t remaining() const { return n_ - next_; }
  const Dist& source() const { return p_; }

  // Hands out the next `count` users; returns the first id and writes their
  // samples into `out`.
  std::size_t take(std::size_t count, std::vector<std::size_t>& out) {
    if (count > remaining()) {
      throw InsufficientSamples(count, remaining());
    }
    const std::size_t first = next_;
    out.resize(count);
    for (std::size_t& x : out) x = p_.sample(rng_);
    next_ += count;
    return first;
  }

 private:
  Dist p_;
  std::size_t n_;
  std::size_t next_ = 0;
  Rng rng_;
};

struct ReductionOptions {
  double comparison_constant = 1.0;  // C in g = ceil(C log(m/beta)/(eps alpha)^2)
  double h_constant = kDefaultHConstant;
  double gamma0 = kDefaultGamma0;
};

struct ComparisonBudget {
  std::size_t m_total = 0;     // worst-case number of comparisons
  std::size_t group_size = 0;  // g, users per comparison
  std::size_t n_required = 0;  // m_total * g
};

inline std::size_t group_size_for(std::size_t m_total, double epsilon,
                                  double alpha, double beta_fail, double c) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must be in (0, 1]");
  if (!(beta_fail > 0.0 && beta_fail < 1.0)) {
    throw InvalidArgument("beta_fail must be in (0, 1)");
  }
  if (!(c > 0.0)) throw InvalidArgument("comparison constant must be positive");
  const double m = static_cast<double>(std::max<std::size_t>(m_total, 1));
  const double g = std::ceil(c * std::log(m / beta_fail) /
                             (epsilon * epsilon * alpha * alpha));
  return static_cast<std::size_t>(std::max(1.0, g));
}

inline ComparisonBudget comparison_budget(std::size_t k, std::size_t t,
                                          double epsilon, double alpha,
                                          double beta_fail,
                                          const ReductionOptions& opt = {}) {
  if (k == 0) throw InvalidArgument("need at least one hypothesis");
  ComparisonBudget b;
  b.m_total = better_multi_round_max_queries(k, t, opt.h_constant);
  b.group_size =
      group_size_for(b.m_total, epsilon, alpha, beta_fail, opt.comparison_constant);
  b.n_required = b.m_total * b.group_size;
  return b;
}

inline ComparisonBudget naive_budget(std::size_t k, double epsilon,
                                     double alpha, double beta_fail,
                                     const ReductionOptions& opt = {}) {
  ComparisonBudget b;
  b.m_total = pairs(k);
  b.group_size =
      group_size_for(b.m_total, epsilon, alpha, beta_fail, opt.comparison_constant);
  b.n_required = b.m_total * b.group_size;
  return b;
}

// Answers query(i, j) with a private Scheffé test between q_i and q_j on
// the next g users of the population, logging everything to a transcript.
class ScheffeOracle : public ComparatorOracle {
 public:
  ScheffeOracle(const HypothesisSet& q, UserPopulation& population,
                std::size_t group_size, double epsilon, Transcript& transcript,
                Rng& rng)
      : ComparatorOracle(q.k()),
        q_(q),
        population_(population),
        group_size_(group_size),
        epsilon_(epsilon),
        transcript_(transcript),
        rng_(rng) {
    if (group_size_ == 0) throw InvalidArgument("group size must be >= 1");
    if (q.alphabet_size() != population.source().size()) {
      throw InvalidArgument("population and hypotheses use different alphabets");
    }
  }

 protected:
  ItemId answer(ItemId a, ItemId b) override {
    if (transcript_.rounds.size() < rounds()) transcript_.rounds.emplace_back();
    RoundRecord& round = transcript_.rounds.back();
    const std::size_t first = population_.take(group_size_, samples_);
    const LdpScheffeOutcome out = ldp_scheffe(
        samples_, q_[a], q_[b], epsilon_, rng_,
        LedgerSlot{&transcript_.ledger, first, rounds() - 1});
    ++round.comparisons;
    round.messages += group_size_;
    if (!round.users.empty() &&
        round.users.back().first + round.users.back().count == first) {
      round.users.back().count += group_size_;
    } else {
      round.users.push_back(UserRange{first, group_size_});
    }
    transcript_.samples_used += group_size_;
    return out.choice == ScheffeChoice::kFirst ? a : b;
  }

 private:
  const HypothesisSet& q_;
  UserPopulation& population_;
  std::size_t group_size_;
  double epsilon_;
  Transcript& transcript_;
  Rng& rng_;
  std::vector<std::size_t> samples_;
};

struct SelectionOutcome {
  std::size_t chosen = 0;
  Transcript transcript;
  ComparisonBudget budget;
  SelectionResult selection;
};

// better_multi_round over Q with private Scheffé comparisons. Throws
// InsufficientSamples if the population runs out mid-protocol.
inline SelectionOutcome hypothesis_select_ldp(const HypothesisSet& q,
                                              UserPopulation& population,
                                              double epsilon, double alpha,
                                              double beta_fail, std::size_t t,
                                              Rng& rng,
                                              const ReductionOptions& opt = {}) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  PrivacyParams{epsilon, NoiseMode::kStrict}.validate();
  SelectionOutcome out;
  out.budget = comparison_budget(q.k(), t, epsilon, alpha, beta_fail, opt);
  ScheffeOracle oracle(q, population, out.budget.group_size, epsilon,
                       out.transcript, rng);
  const std::vector<ItemId> ids = all_ids(q.k());
  out.selection = better_multi_round(ids, t, oracle, rng, opt.h_constant);
  out.chosen = out.selection.winner;
  out.transcript.chosen = out.chosen;
  return out;
}

// One round: every pair compared on its own group of users, most wins.
inline SelectionOutcome naive_k2_baseline(const HypothesisSet& q,
                                          UserPopulation& population,
                                          double epsilon, double alpha,
                                          double beta_fail, Rng& rng,
                                          const ReductionOptions& opt = {}) {
  PrivacyParams{epsilon, NoiseMode::kStrict}.validate();
  SelectionOutcome out;
  out.budget = naive_budget(q.k(), epsilon, alpha, beta_fail, opt);
  ScheffeOracle oracle(q, population, out.budget.group_size, epsilon,
                       out.transcript, rng);
  const std::vector<ItemId> ids = all_ids(q.k());
  out.selection = round_robin(ids, oracle);
  out.chosen = out.selection.winner;
  out.transcript.chosen = out.chosen;
  return out;
}

struct AgnosticScore {
  double achieved = 0.0;  // TV(p, chosen)
  double beta = 0.0;      // min TV(p, Q)
  // (achieved - alpha) / beta; unset when beta == 0 (the realizable case).
  std::optional<double> factor;
};

inline AgnosticScore agnostic_score(const Dist& chosen, const Dist& p,
                                    const HypothesisSet& q, double alpha) {
  AgnosticScore s;
  s.achieved = tv_distance(p, chosen);
  s.beta = min_tv_to_set(p, q).beta;
  if (s.beta > 0.0) s.factor = (s.achieved - alpha) / s.beta;
  return s;
}

// Smallest C in [lo, hi] (to a relative tolerance) with
// success_rate(C) >= target, by bisection. success_rate must be
// nondecreasing in C up to noise; evaluate it on seeds held out from the
// experiment. Returns hi if even hi misses the target.
template <typename SuccessRate>
double calibrate_constant(SuccessRate&& success_rate, double target, double lo,
                          double hi, int iterations = 12) {
  if (!(lo > 0.0 && hi > lo)) throw InvalidArgument("need 0 < lo < hi");
  if (success_rate(hi) < target) return hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (success_rate(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace ldphs

#endif  // LDPHS_REDUCTION_HPP_
