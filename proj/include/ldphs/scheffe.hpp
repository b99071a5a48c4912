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

// The Scheffé test between two hypotheses and its locally private version.
//
// With S = {x : q1(x) > q2(x)}, the test estimates p(S) and picks the
// hypothesis whose mass on S is strictly closer; ties go to q2. In the
// private version every user reports 1{X in S} through randomized response
// and the curator debiases the average.

#ifndef LDPHS_SCHEFFE_HPP_
#define LDPHS_SCHEFFE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"
#include "ldphs/ldp.hpp"
#include "ldphs/random.hpp"

namespace ldphs {

struct ScheffeWitness {
  std::vector<std::uint8_t> mask;  // mask[x] != 0 iff x in S
  double q1_mass = 0.0;
  double q2_mass = 0.0;

  bool contains(std::size_t x) const { return mask[x] != 0; }
  std::size_t size() const {
    std::size_t n = 0;
    for (std::uint8_t m : mask) n += m;
    return n;
  }
};

inline ScheffeWitness scheffe_set(const Dist& q1, const Dist& q2) {
  require_same_alphabet(q1, q2);
  ScheffeWitness w;
  w.mask.assign(q1.size(), 0);
  for (std::size_t x = 0; x < q1.size(); ++x) {
    if (q1[x] > q2[x]) {
      w.mask[x] = 1;
      w.q1_mass += q1[x];
      w.q2_mass += q2[x];
    }
  }
  return w;
}

enum class ScheffeChoice { kFirst, kSecond };

// q1 iff its mass on S is strictly closer to the estimate.
inline ScheffeChoice scheffe_decide(const ScheffeWitness& w, double estimate) {
  return std::abs(w.q1_mass - estimate) < std::abs(w.q2_mass - estimate)
             ? ScheffeChoice::kFirst
             : ScheffeChoice::kSecond;
}

inline double empirical_mass(const ScheffeWitness& w,
                             std::span<const std::size_t> samples) {
  if (samples.empty()) throw InvalidArgument("need at least one sample");
  std::size_t hits = 0;
  for (std::size_t x : samples) {
    if (x >= w.mask.size()) throw InvalidArgument("sample outside the alphabet");
    hits += w.mask[x];
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

inline ScheffeChoice scheffe_test(std::span<const std::size_t> samples,
                                  const Dist& q1, const Dist& q2) {
  const ScheffeWitness w = scheffe_set(q1, q2);
  return scheffe_decide(w, empirical_mass(w, samples));
}

struct LdpScheffeOutcome {
  ScheffeChoice choice = ScheffeChoice::kSecond;
  double estimate = 0.0;  // debiased, unclamped
};

// Where to log the users of one private comparison. User ids are
// first_user, first_user + 1, ... in sample order.
struct LedgerSlot {
  PrivacyLedger* ledger = nullptr;
  std::size_t first_user = 0;
  std::size_t round = 0;
};

inline LdpScheffeOutcome ldp_scheffe(std::span<const std::size_t> samples,
                                     const ScheffeWitness& w, double epsilon,
                                     Rng& rng, LedgerSlot slot = {}) {
  if (samples.empty()) throw InvalidArgument("need at least one user");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  std::size_t ones = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const std::size_t x = samples[j];
    if (x >= w.mask.size()) throw InvalidArgument("sample outside the alphabet");
    ones += static_cast<std::size_t>(randomized_response(w.mask[x], epsilon, rng));
    if (slot.ledger != nullptr) {
      slot.ledger->record(slot.first_user + j, slot.round,
                          Mechanism::kRandomizedResponse, epsilon);
    }
  }
  LdpScheffeOutcome out;
  out.estimate = rr_debias(
      static_cast<double>(ones) / static_cast<double>(samples.size()), epsilon);
  out.choice = scheffe_decide(w, out.estimate);
  return out;
}

inline LdpScheffeOutcome ldp_scheffe(std::span<const std::size_t> samples,
                                     const Dist& q1, const Dist& q2,
                                     double epsilon, Rng& rng,
                                     LedgerSlot slot = {}) {
  return ldp_scheffe(samples, scheffe_set(q1, q2), epsilon, rng, slot);
}

inline constexpr double kDefaultGamma0 = 0.1;

// x = -log_{3 + gamma0} TV(p, q): a comparator value under which a gap
// above 1 means q is more than (3 + gamma0) times closer to p. Infinite
// when q = p.
inline double comparator_value(const Dist& p, const Dist& q,
                               double gamma0 = kDefaultGamma0) {
  const double tv = tv_distance(p, q);
  if (tv == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(tv) / std::log(3.0 + gamma0);
}

}  // namespace ldphs

#endif  // LDPHS_SCHEFFE_HPP_
