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

// Comparators with adversarial ties: query(i, j) returns the larger-valued
// item whenever the values differ by more than 1, and anything the
// adversary likes otherwise.

#ifndef LDPHS_COMPARATOR_HPP_
#define LDPHS_COMPARATOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ldphs/error.hpp"
#include "ldphs/random.hpp"

namespace ldphs {

using ItemId = std::size_t;

struct Item {
  ItemId id = 0;
  double value = 0.0;
};

// Items 0..k-1 with the given values.
inline std::vector<Item> make_items(std::span<const double> values) {
  std::vector<Item> items(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) items[i] = {i, values[i]};
  return items;
}

inline std::vector<ItemId> all_ids(std::size_t k) {
  std::vector<ItemId> ids(k);
  std::iota(ids.begin(), ids.end(), ItemId{0});
  return ids;
}

// Base class of every comparator. Queries are only legal inside a round;
// callers open each round with begin_round().
class ComparatorOracle {
 public:
  explicit ComparatorOracle(std::size_t k) : k_(k) {}
  virtual ~ComparatorOracle() = default;

  std::size_t size() const { return k_; }

  void begin_round() { per_round_.push_back(0); }

  ItemId query(ItemId a, ItemId b) {
    if (per_round_.empty()) {
      throw ProtocolViolation("query issued before the first begin_round()");
    }
    if (a >= k_ || b >= k_) {
      throw InvalidArgument("unknown item id " + std::to_string(std::max(a, b)));
    }
    if (a == b) throw InvalidArgument("an item cannot be compared to itself");
    ++total_;
    ++per_round_.back();
    return answer(a, b);
  }

  std::size_t queries_total() const { return total_; }
  const std::vector<std::size_t>& queries_per_round() const {
    return per_round_;
  }
  std::size_t rounds() const { return per_round_.size(); }

 protected:
  virtual ItemId answer(ItemId a, ItemId b) = 0;

 private:
  std::size_t k_;
  std::size_t total_ = 0;
  std::vector<std::size_t> per_round_;
};

enum class TiePolicy { kFavorLower, kFavorHigher, kUniformRandom, kGreedyAdaptive };

inline std::string_view to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::kFavorLower: return "favor_lower";
    case TiePolicy::kFavorHigher: return "favor_higher";
    case TiePolicy::kUniformRandom: return "uniform_random";
    case TiePolicy::kGreedyAdaptive: return "greedy_adaptive";
  }
  return "?";
}

inline TiePolicy parse_tie_policy(std::string_view s) {
  if (s == "favor_lower") return TiePolicy::kFavorLower;
  if (s == "favor_higher") return TiePolicy::kFavorHigher;
  if (s == "uniform_random" || s == "uniform") return TiePolicy::kUniformRandom;
  if (s == "greedy_adaptive" || s == "greedy") return TiePolicy::kGreedyAdaptive;
  throw InvalidArgument("unknown adversary '" + std::string(s) + "'");
}

// Truthful outside ties; ties resolved by a TiePolicy.
//
// kUniformRandom commits to one orientation per pair (a keyed hash of the
// pair), so repeats agree. kGreedyAdaptive remembers every answer and sends
// each new tie to whichever item has lost more so far, then to the lower
// value, then to the lower id: it keeps weak items alive.
class GapComparator : public ComparatorOracle {
 public:
  GapComparator(std::vector<double> values, TiePolicy policy,
                std::uint64_t seed = 0)
      : ComparatorOracle(values.size()),
        values_(std::move(values)),
        policy_(policy),
        key_(splitmix64(seed)),
        losses_(values_.size(), 0) {
    for (double v : values_) {
      if (std::isnan(v)) throw InvalidArgument("item value is NaN");
    }
    if (policy_ == TiePolicy::kGreedyAdaptive &&
        values_.size() <= kDenseMemoLimit) {
      dense_.assign(values_.size() * values_.size(), kNoAnswer);
    }
  }

  double value(ItemId i) const { return values_.at(i); }
  const std::vector<double>& values() const { return values_; }
  TiePolicy policy() const { return policy_; }

 protected:
  ItemId answer(ItemId a, ItemId b) override {
    const double va = values_[a];
    const double vb = values_[b];
    if (policy_ != TiePolicy::kGreedyAdaptive) {
      if (va - vb > 1.0) return a;
      if (vb - va > 1.0) return b;
      return tie(a, b);
    }
    if (auto prior = recall(a, b)) return *prior;
    ItemId w;
    if (va - vb > 1.0) {
      w = a;
    } else if (vb - va > 1.0) {
      w = b;
    } else {
      w = greedy_tie(a, b);
    }
    remember(a, b, w);
    ++losses_[w == a ? b : a];
    return w;
  }

 private:
  static constexpr std::size_t kDenseMemoLimit = 2048;
  static constexpr std::uint32_t kNoAnswer = 0xffffffffU;

  ItemId tie(ItemId a, ItemId b) const {
    const ItemId lo_id = std::min(a, b);
    const ItemId hi_id = std::max(a, b);
    switch (policy_) {
      case TiePolicy::kFavorLower:
        if (values_[a] != values_[b]) return values_[a] < values_[b] ? a : b;
        return lo_id;
      case TiePolicy::kFavorHigher:
        if (values_[a] != values_[b]) return values_[a] > values_[b] ? a : b;
        return lo_id;
      case TiePolicy::kUniformRandom:
        return pair_coin(key_, a, b) ? lo_id : hi_id;
      case TiePolicy::kGreedyAdaptive:
        break;
    }
    return lo_id;
  }

  ItemId greedy_tie(ItemId a, ItemId b) const {
    if (losses_[a] != losses_[b]) return losses_[a] > losses_[b] ? a : b;
    if (values_[a] != values_[b]) return values_[a] < values_[b] ? a : b;
    return std::min(a, b);
  }

  std::optional<ItemId> recall(ItemId a, ItemId b) const {
    if (a > b) std::swap(a, b);
    if (!dense_.empty()) {
      const std::uint32_t w = dense_[a * size() + b];
      if (w == kNoAnswer) return std::nullopt;
      return static_cast<ItemId>(w);
    }
    auto it = sparse_.find(pair_key(a, b));
    if (it == sparse_.end()) return std::nullopt;
    return it->second;
  }

  void remember(ItemId a, ItemId b, ItemId w) {
    if (a > b) std::swap(a, b);
    if (!dense_.empty()) {
      dense_[a * size() + b] = static_cast<std::uint32_t>(w);
    } else {
      sparse_.emplace(pair_key(a, b), w);
    }
  }

  static std::uint64_t pair_key(ItemId a, ItemId b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  }

  std::vector<double> values_;
  TiePolicy policy_;
  std::uint64_t key_;
  std::vector<std::size_t> losses_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, ItemId> sparse_;
};

// The (k, t) layered tournament.
//
// Nested random subsets [k] = U_0 > U_1 > ... > U_t, |U_t| = 2, with
// |U_q| = round(k^{(2^t - 2^q)/(2^t - 1)}) for 0 < q < t. Layer q is
// V_q = U_q \ U_{q+1}. Edges between layers point to the higher layer,
// edges inside a layer are fair coins, and inside V_t = {i*, i'} the edge
// points to i*. So i* beats everyone and i' beats everyone but i*.
class LayeredTournament {
 public:
  LayeredTournament(std::size_t k, std::size_t t, Rng& rng)
      : k_(k), t_(t), layer_(k, 0) {
    sizes_ = layer_sizes(k, t);
    std::vector<ItemId> current = all_ids(k);
    for (std::size_t q = 1; q <= t_; ++q) {
      std::vector<ItemId> picked =
          sample_without_replacement(current.size(), sizes_[q], rng);
      std::vector<ItemId> next(picked.size());
      for (std::size_t i = 0; i < picked.size(); ++i) next[i] = current[picked[i]];
      for (ItemId v : next) layer_[v] = static_cast<std::uint32_t>(q);
      current = std::move(next);
    }
    const std::size_t pick = uniform_index(rng, 2);
    sink_ = current[pick];
    runner_up_ = current[1 - pick];
    key_ = rng();
  }

  // |U_0|, ..., |U_t| after rounding and repair. Throws Infeasible when k is
  // too small for t.
  static std::vector<std::size_t> layer_sizes(std::size_t k, std::size_t t) {
    if (t < 1) throw InvalidArgument("t must be >= 1");
    if (k < 4) throw Infeasible("layered tournament needs k >= 4");
    if (t >= 63) throw Infeasible("t too large for the layered tournament");
    const double denom = std::ldexp(1.0, static_cast<int>(t)) - 1.0;
    std::vector<std::size_t> sizes(t + 1);
    sizes[0] = k;
    sizes[t] = 2;
    for (std::size_t q = 1; q < t; ++q) {
      const double expo = (std::ldexp(1.0, static_cast<int>(t)) -
                           std::ldexp(1.0, static_cast<int>(q))) /
                          denom;
      sizes[q] = static_cast<std::size_t>(
          std::llround(std::pow(static_cast<double>(k), expo)));
    }
    // Repair: each layer strictly inside the previous one.
    for (std::size_t q = 1; q < t; ++q) {
      sizes[q] = std::min(sizes[q], sizes[q - 1] - 1);
    }
    for (std::size_t q = 1; q <= t; ++q) {
      if (sizes[q] >= sizes[q - 1] || sizes[q] < 2) {
        throw Infeasible("k = " + std::to_string(k) + " is too small for t = " +
                         std::to_string(t));
      }
    }
    return sizes;
  }

  std::size_t k() const { return k_; }
  std::size_t t() const { return t_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t layer_of(ItemId v) const { return layer_.at(v); }
  ItemId sink() const { return sink_; }
  ItemId runner_up() const { return runner_up_; }

  // Head of the edge between a and b.
  ItemId winner(ItemId a, ItemId b) const {
    const std::uint32_t la = layer_[a];
    const std::uint32_t lb = layer_[b];
    if (la != lb) return la > lb ? a : b;
    if (la == t_) return sink_;
    return pair_coin(key_, a, b) ? std::min(a, b) : std::max(a, b);
  }

  // Values consistent with every edge as an adversarial comparator: each
  // strongly connected component C_i (numbered from the bottom) gets 2*i*tau.
  // Computed on first use in O(sum |V_q|^2).
  const std::vector<double>& values(double tau = 1.0) const {
    if (values_.empty() || tau != values_tau_) compute_values(tau);
    return values_;
  }

 private:
  void compute_values(double tau) const {
    std::vector<std::vector<ItemId>> layers(t_ + 1);
    for (ItemId v = 0; v < k_; ++v) layers[layer_[v]].push_back(v);
    values_.assign(k_, 0.0);
    values_tau_ = tau;
    std::size_t component = 0;
    for (const std::vector<ItemId>& members : layers) {
      // Landau: sorted by in-layer wins, a prefix of m vertices with C(m,2)
      // total wins loses every game to the rest, so it closes a component.
      std::vector<std::pair<std::size_t, ItemId>> scored;
      scored.reserve(members.size());
      for (ItemId v : members) {
        std::size_t wins = 0;
        for (ItemId u : members) {
          if (u != v && winner(u, v) == v) ++wins;
        }
        scored.emplace_back(wins, v);
      }
      std::sort(scored.begin(), scored.end());
      std::size_t running = 0;
      for (std::size_t m = 0; m < scored.size(); ++m) {
        running += scored[m].first;
        values_[scored[m].second] = 2.0 * tau * static_cast<double>(component);
        if (running == (m + 1) * m / 2) ++component;
      }
    }
  }

  std::size_t k_;
  std::size_t t_;
  std::vector<std::size_t> sizes_;
  std::vector<std::uint32_t> layer_;
  ItemId sink_ = 0;
  ItemId runner_up_ = 0;
  std::uint64_t key_ = 0;
  mutable std::vector<double> values_;
  mutable double values_tau_ = 0.0;
};

inline LayeredTournament build_layered_tournament(std::size_t k, std::size_t t,
                                                  Rng& rng) {
  return LayeredTournament(k, t, rng);
}

inline ItemId sink_of(const LayeredTournament& g) { return g.sink(); }

// Answers by the tournament's edges. Holds a reference: the tournament must
// outlive the oracle.
class TournamentOracle : public ComparatorOracle {
 public:
  explicit TournamentOracle(const LayeredTournament& graph)
      : ComparatorOracle(graph.k()), graph_(graph) {}

 protected:
  ItemId answer(ItemId a, ItemId b) override { return graph_.winner(a, b); }

 private:
  const LayeredTournament& graph_;
};

}  // namespace ldphs

#endif  // LDPHS_COMPARATOR_HPP_
