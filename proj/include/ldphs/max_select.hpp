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

// Approximate maximum selection in a fixed number of rounds.
//
// Every algorithm is a SelectionProcess: it hands out one batch of queries
// per round and is told the answers before planning the next batch.
// run_selection() drives a process against a ComparatorOracle and opens a
// new oracle round per batch, so round counts are exact by construction and
// several processes can share rounds (amplify).
//
//   round_robin         all pairs, most wins (ties to the lowest id)
//   multi_round(t)      groups of ~k^{1/(2^t-1)}, round robin inside each
//                       group, recurse on the winners with t-1
//   better_multi_round  multi_round on a random permutation, stopped before
//                       its last level; the survivors L plus a uniform sample
//                       H are round-robined in the last round

#ifndef LDPHS_MAX_SELECT_HPP_
#define LDPHS_MAX_SELECT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ldphs/comparator.hpp"
#include "ldphs/error.hpp"
#include "ldphs/random.hpp"

namespace ldphs {

struct Query {
  ItemId a = 0;
  ItemId b = 0;
};

class SelectionProcess {
 public:
  virtual ~SelectionProcess() = default;
  virtual bool done() const = 0;
  // The next round's queries; never empty while !done().
  virtual std::vector<Query> next_batch() = 0;
  // answers[i] is the winner of the i-th query of the last batch.
  virtual void accept(std::span<const ItemId> answers) = 0;
  virtual ItemId winner() const = 0;
};

inline void append_all_pairs(std::span<const ItemId> items,
                             std::vector<Query>& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      out.push_back({items[i], items[j]});
    }
  }
}

inline std::size_t pairs(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// Most wins among `items` over the given answers; ties go to the lowest id.
inline ItemId most_wins(std::span<const ItemId> items,
                        std::span<const ItemId> answers) {
  std::unordered_map<ItemId, std::size_t> wins;
  for (ItemId w : answers) ++wins[w];
  ItemId best = items[0];
  std::size_t best_wins = wins[best];
  for (ItemId v : items) {
    const std::size_t w = wins[v];
    if (w > best_wins || (w == best_wins && v < best)) {
      best = v;
      best_wins = w;
    }
  }
  return best;
}

// Balanced contiguous partition: sizes differ by at most one, larger groups
// first. Callers permute `items` beforehand for a random assignment.
inline std::vector<std::vector<ItemId>> partition_items(
    std::span<const ItemId> items, std::size_t group_count) {
  if (group_count == 0) throw InvalidArgument("group_count must be >= 1");
  group_count = std::min(group_count, std::max<std::size_t>(items.size(), 1));
  std::vector<std::vector<ItemId>> groups(group_count);
  const std::size_t base = items.size() / group_count;
  const std::size_t extra = items.size() % group_count;
  std::size_t next = 0;
  for (std::size_t g = 0; g < group_count; ++g) {
    const std::size_t len = base + (g < extra ? 1 : 0);
    groups[g].assign(items.begin() + static_cast<std::ptrdiff_t>(next),
                     items.begin() + static_cast<std::ptrdiff_t>(next + len));
    next += len;
  }
  return groups;
}

// Rounds real numbers within 1e-9 of an integer, so that e.g. 64^{1/3}
// plans groups of 4 rather than 5.
inline double snap_to_integer(double x) {
  const double r = std::round(x);
  return std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(r)) ? r : x;
}

// One level of multi_round on k items with t rounds left.
struct LevelPlan {
  std::size_t groups = 1;
  bool final = true;  // a single round robin over everything
};

inline LevelPlan plan_level(std::size_t k, std::size_t t) {
  if (t == 0) throw InvalidArgument("t must be >= 1");
  if (k <= 1 || t == 1) return {1, true};
  if (t >= 63) t = 62;
  const double eta = 1.0 / (std::ldexp(1.0, static_cast<int>(t)) - 1.0);
  auto size = static_cast<std::size_t>(
      std::ceil(snap_to_integer(std::pow(static_cast<double>(k), eta))));
  size = std::clamp<std::size_t>(size, 2, k);
  const std::size_t groups = (k + size - 1) / size;
  if (groups == 1) return {1, true};
  return {groups, false};
}

// |H| for better_multi_round: min(k, ceil(c * k^{2^{t-1}/(2^t-1)})).
inline std::size_t sample_size_h(std::size_t k, std::size_t t, double h_const) {
  if (t == 0) throw InvalidArgument("t must be >= 1");
  if (!(h_const >= 0.0)) throw InvalidArgument("h constant must be >= 0");
  const int ti = static_cast<int>(std::min<std::size_t>(t, 62));
  const double expo = std::ldexp(1.0, ti - 1) / (std::ldexp(1.0, ti) - 1.0);
  const double h =
      std::ceil(snap_to_integer(h_const * std::pow(static_cast<double>(k), expo)));
  if (h >= static_cast<double>(k)) return k;
  return static_cast<std::size_t>(h);
}

inline constexpr double kDefaultHConstant = 100.0;

class RoundRobinProcess : public SelectionProcess {
 public:
  explicit RoundRobinProcess(std::vector<ItemId> items) : items_(std::move(items)) {
    if (items_.empty()) throw InvalidArgument("need at least one item");
    if (items_.size() == 1) {
      done_ = true;
      winner_ = items_[0];
    }
  }

  bool done() const override { return done_; }
  std::vector<Query> next_batch() override {
    std::vector<Query> batch;
    batch.reserve(pairs(items_.size()));
    append_all_pairs(items_, batch);
    return batch;
  }
  void accept(std::span<const ItemId> answers) override {
    winner_ = most_wins(items_, answers);
    done_ = true;
  }
  ItemId winner() const override { return winner_; }

 private:
  std::vector<ItemId> items_;
  bool done_ = false;
  ItemId winner_ = 0;
};

// multi_round over `items` in the given order. With halt_before_final the
// process stops when the next level would be the last round robin, and
// survivors() holds that level's inputs.
class MultiRoundProcess : public SelectionProcess {
 public:
  MultiRoundProcess(std::vector<ItemId> items, std::size_t t,
                    bool halt_before_final = false)
      : current_(std::move(items)), t_(t), halt_(halt_before_final) {
    if (t_ < 1) throw InvalidArgument("t must be >= 1");
    if (current_.empty()) throw InvalidArgument("need at least one item");
    settle();
  }

  bool done() const override { return done_; }

  std::vector<Query> next_batch() override {
    const LevelPlan plan = plan_level(current_.size(), t_);
    final_level_ = plan.final;
    groups_ = plan.final ? std::vector<std::vector<ItemId>>{current_}
                         : partition_items(current_, plan.groups);
    std::vector<Query> batch;
    for (const auto& g : groups_) append_all_pairs(g, batch);
    return batch;
  }

  void accept(std::span<const ItemId> answers) override {
    std::vector<ItemId> winners;
    winners.reserve(groups_.size());
    std::size_t offset = 0;
    for (const auto& g : groups_) {
      const std::size_t n = pairs(g.size());
      winners.push_back(g.size() == 1 ? g[0]
                                      : most_wins(g, answers.subspan(offset, n)));
      offset += n;
    }
    current_ = std::move(winners);
    if (final_level_) {
      done_ = true;
      return;
    }
    --t_;
    settle();
  }

  ItemId winner() const override { return current_.front(); }
  const std::vector<ItemId>& survivors() const { return current_; }

 private:
  void settle() {
    if (current_.size() == 1) {
      done_ = true;
    } else if (halt_ && plan_level(current_.size(), t_).final) {
      done_ = true;
    }
  }

  std::vector<ItemId> current_;
  std::size_t t_;
  bool halt_;
  bool done_ = false;
  bool final_level_ = false;
  std::vector<std::vector<ItemId>> groups_;
};

class BetterMultiRoundProcess : public SelectionProcess {
 public:
  BetterMultiRoundProcess(std::vector<ItemId> items, std::size_t t, Rng& rng,
                          double h_const = kDefaultHConstant)
      : inner_(permuted(items, rng), t, /*halt_before_final=*/true) {
    const std::size_t h = sample_size_h(items.size(), t, h_const);
    for (std::size_t idx : sample_without_replacement(items.size(), h, rng)) {
      sampled_.push_back(items[idx]);
    }
    if (inner_.done()) build_final();
  }

  bool done() const override { return inner_.done() && final_.done(); }

  std::vector<Query> next_batch() override {
    return inner_.done() ? final_.next_batch() : inner_.next_batch();
  }

  void accept(std::span<const ItemId> answers) override {
    if (!inner_.done()) {
      inner_.accept(answers);
      if (inner_.done()) build_final();
      return;
    }
    final_.accept(answers);
  }

  ItemId winner() const override { return final_.winner(); }
  // L: the inputs the last multi_round level would have seen.
  const std::vector<ItemId>& survivors() const { return inner_.survivors(); }
  // H, in draw order.
  const std::vector<ItemId>& sampled_set() const { return sampled_; }
  // L followed by the members of H not already in L.
  const std::vector<ItemId>& final_pool() const { return pool_; }

 private:
  static std::vector<ItemId> permuted(std::vector<ItemId> items, Rng& rng) {
    shuffle(items, rng);
    return items;
  }

  void build_final() {
    pool_ = inner_.survivors();
    std::unordered_set<ItemId> seen(pool_.begin(), pool_.end());
    for (ItemId v : sampled_) {
      if (seen.insert(v).second) pool_.push_back(v);
    }
    final_ = RoundRobinProcess(pool_);
  }

  MultiRoundProcess inner_;
  std::vector<ItemId> sampled_;
  std::vector<ItemId> pool_;
  RoundRobinProcess final_{std::vector<ItemId>{0}};
};

// r copies run in lockstep; the distinct winners meet in one more round
// robin.
class AmplifyProcess : public SelectionProcess {
 public:
  explicit AmplifyProcess(std::vector<std::unique_ptr<SelectionProcess>> children)
      : children_(std::move(children)) {
    if (children_.empty()) throw InvalidArgument("need at least one repetition");
    maybe_finish_children();
  }

  bool done() const override { return final_ && final_->done(); }

  std::vector<Query> next_batch() override {
    if (final_) return final_->next_batch();
    std::vector<Query> batch;
    slices_.clear();
    for (std::size_t c = 0; c < children_.size(); ++c) {
      if (children_[c]->done()) continue;
      std::vector<Query> part = children_[c]->next_batch();
      slices_.push_back({c, batch.size(), part.size()});
      batch.insert(batch.end(), part.begin(), part.end());
    }
    return batch;
  }

  void accept(std::span<const ItemId> answers) override {
    if (final_) {
      final_->accept(answers);
      return;
    }
    for (const Slice& s : slices_) {
      children_[s.child]->accept(answers.subspan(s.offset, s.length));
    }
    maybe_finish_children();
  }

  ItemId winner() const override { return final_->winner(); }
  const std::vector<ItemId>& child_winners() const { return child_winners_; }

 private:
  struct Slice {
    std::size_t child;
    std::size_t offset;
    std::size_t length;
  };

  void maybe_finish_children() {
    for (const auto& c : children_) {
      if (!c->done()) return;
    }
    std::unordered_set<ItemId> seen;
    for (const auto& c : children_) {
      if (seen.insert(c->winner()).second) child_winners_.push_back(c->winner());
    }
    final_ = std::make_unique<RoundRobinProcess>(child_winners_);
  }

  std::vector<std::unique_ptr<SelectionProcess>> children_;
  std::vector<Slice> slices_;
  std::vector<ItemId> child_winners_;
  std::unique_ptr<RoundRobinProcess> final_;
};

struct SelectionResult {
  ItemId winner = 0;
  std::size_t queries_total = 0;
  std::vector<std::size_t> queries_per_round;
  std::size_t rounds_used = 0;
  std::vector<ItemId> survivors;    // better_multi_round's L
  std::vector<ItemId> sampled_set;  // better_multi_round's H
};

inline SelectionResult run_selection(SelectionProcess& process,
                                     ComparatorOracle& oracle) {
  SelectionResult result;
  std::vector<ItemId> answers;
  while (!process.done()) {
    const std::vector<Query> batch = process.next_batch();
    if (batch.empty()) throw ProtocolViolation("selection produced an empty round");
    oracle.begin_round();
    answers.resize(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      answers[i] = oracle.query(batch[i].a, batch[i].b);
    }
    process.accept(answers);
    result.queries_per_round.push_back(batch.size());
    result.queries_total += batch.size();
  }
  result.rounds_used = result.queries_per_round.size();
  result.winner = process.winner();
  return result;
}

inline SelectionResult round_robin(std::span<const ItemId> items,
                                   ComparatorOracle& oracle) {
  RoundRobinProcess p({items.begin(), items.end()});
  return run_selection(p, oracle);
}

inline SelectionResult multi_round(std::span<const ItemId> items,
                                   std::size_t t, ComparatorOracle& oracle) {
  MultiRoundProcess p({items.begin(), items.end()}, t);
  return run_selection(p, oracle);
}

inline SelectionResult two_round(std::span<const ItemId> items,
                                 ComparatorOracle& oracle) {
  return multi_round(items, 2, oracle);
}

inline SelectionResult better_multi_round(std::span<const ItemId> items,
                                          std::size_t t,
                                          ComparatorOracle& oracle, Rng& rng,
                                          double h_const = kDefaultHConstant) {
  BetterMultiRoundProcess p({items.begin(), items.end()}, t, rng, h_const);
  SelectionResult r = run_selection(p, oracle);
  r.survivors = p.survivors();
  r.sampled_set = p.sampled_set();
  return r;
}

using ProcessFactory = std::function<std::unique_ptr<SelectionProcess>(Rng&)>;

// r independent repetitions of `make` (each with its own stream) plus a
// round robin of their distinct winners.
inline SelectionResult amplify(const ProcessFactory& make, std::size_t r,
                               ComparatorOracle& oracle, Rng& rng) {
  if (r < 1) throw InvalidArgument("repetitions must be >= 1");
  std::vector<std::unique_ptr<SelectionProcess>> children;
  const std::uint64_t base = rng();
  for (std::size_t i = 0; i < r; ++i) {
    Rng child = make_rng(base, "amplify", i);
    children.push_back(make(child));
  }
  AmplifyProcess p(std::move(children));
  return run_selection(p, oracle);
}

// Closed-form accounting for the rounding rules above.

struct MultiRoundCounts {
  std::size_t queries = 0;       // all levels, including the last
  std::size_t rounds = 0;
  std::size_t pre_final_queries = 0;
  std::size_t pre_final_rounds = 0;
  std::size_t survivors = 0;     // inputs to the last level
};

inline MultiRoundCounts multi_round_counts(std::size_t k, std::size_t t) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
  if (k == 0) throw InvalidArgument("need at least one item");
  MultiRoundCounts c;
  std::size_t cur = k;
  while (cur > 1) {
    const LevelPlan plan = plan_level(cur, t);
    if (plan.final) {
      c.survivors = cur;
      c.queries = c.pre_final_queries + pairs(cur);
      c.rounds = c.pre_final_rounds + 1;
      return c;
    }
    const std::size_t base = cur / plan.groups;
    const std::size_t extra = cur % plan.groups;
    c.pre_final_queries += extra * pairs(base + 1) + (plan.groups - extra) * pairs(base);
    ++c.pre_final_rounds;
    cur = plan.groups;
    --t;
  }
  c.survivors = 1;
  c.queries = c.pre_final_queries;
  c.rounds = c.pre_final_rounds;
  return c;
}

inline std::size_t multi_round_query_count(std::size_t k, std::size_t t) {
  return multi_round_counts(k, t).queries;
}

inline std::size_t survivor_count(std::size_t k, std::size_t t) {
  return multi_round_counts(k, t).survivors;
}

// Worst case over the random choices: L and H disjoint.
inline std::size_t better_multi_round_max_queries(
    std::size_t k, std::size_t t, double h_const = kDefaultHConstant) {
  const MultiRoundCounts c = multi_round_counts(k, t);
  const std::size_t pool = std::min(k, c.survivors + sample_size_h(k, t, h_const));
  return c.pre_final_queries + pairs(pool);
}

}  // namespace ldphs

#endif  // LDPHS_MAX_SELECT_HPP_
