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

// Experiment plumbing: seeded trial loops on a worker pool, summaries,
// CSV/JSON output, the lower-bound game, and run_experiment() behind the
// command-line tool.
//
// Trial i of a command always uses the stream derive_seed(seed, command, i),
// so records do not depend on thread count or execution order.

#ifndef LDPHS_HARNESS_HPP_
#define LDPHS_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ldphs/comparator.hpp"
#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"
#include "ldphs/flatten.hpp"
#include "ldphs/instance_io.hpp"
#include "ldphs/ldp.hpp"
#include "ldphs/max_select.hpp"
#include "ldphs/noninteractive.hpp"
#include "ldphs/random.hpp"
#include "ldphs/reduction.hpp"

namespace ldphs {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Statistics

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
  double min = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double max = 0.0;

  Json to_json() const {
    return Json{{"count", count}, {"mean", mean},     {"std_error", std_error},
                {"min", min},     {"q10", q10},       {"median", median},
                {"q90", q90},     {"max", max}};
  }
};

// Linear interpolation between order statistics (type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline Summary summarize(std::span<const double> xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
                  std::sqrt(static_cast<double>(xs.size()));
  }
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q10 = quantile_sorted(sorted, 0.10);
  s.median = quantile_sorted(sorted, 0.50);
  s.q90 = quantile_sorted(sorted, 0.90);
  return s;
}

// Success proportion with its binomial standard error sqrt(p(1-p)/n).
struct Proportion {
  std::size_t successes = 0;
  std::size_t trials = 0;

  double rate() const {
    return trials == 0 ? 0.0
                       : static_cast<double>(successes) / static_cast<double>(trials);
  }
  double std_error() const {
    if (trials == 0) return 0.0;
    const double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

// ---------------------------------------------------------------------------
// Trial loops

inline std::size_t default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// results[i] = fn(i) for i < trials, computed on up to `threads` workers.
// The first exception thrown by any trial is rethrown here.
template <typename Fn>
auto parallel_trials(std::size_t trials, Fn&& fn, std::size_t threads = 0)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::optional<Result>> slots(trials);
  if (threads == 0) threads = default_threads();
  threads = std::max<std::size_t>(1, std::min(threads, trials));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(trials);
        return;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(trials);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::string_view command,
                                std::size_t trial) {
  return derive_seed(seed, command, trial);
}

// ---------------------------------------------------------------------------
// Records and output

// A typed table: one header, one row per record. Cells are JSON scalars so
// the same table renders to CSV and JSON.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

inline std::string render_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += render_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline Json to_json(const Table& table) {
  Json records = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < table.header.size() && i < row.size(); ++i) {
      r[table.header[i]] = row[i];
    }
    records.push_back(std::move(r));
  }
  return records;
}

// "-" means standard output.
inline void write_text(const std::string& text, const std::string& path) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write output file " + path);
  out << text;
  if (!out) throw InvalidArgument("write to " + path + " failed");
}

inline void emit_csv(const Table& table, const std::string& path) {
  if (table.rows.empty()) throw InvalidArgument("no records to write");
  write_text(to_csv(table), path);
}

inline Json json_document(const Json& config, const Json& summary,
                          const Table& table) {
  return Json{{"config", config}, {"summary", summary}, {"records", to_json(table)}};
}

inline void emit_json(const Json& config, const Json& summary,
                      const Table& table, const std::string& path) {
  if (table.rows.empty()) throw InvalidArgument("no records to write");
  write_text(json_document(config, summary, table).dump(2) + "\n", path);
}

// ---------------------------------------------------------------------------
// Lower-bound game

enum class GameStrategy { kBudgetedMultiRound, kBudgetedRandomQueries };

inline std::string_view to_string(GameStrategy s) {
  return s == GameStrategy::kBudgetedMultiRound ? "budgeted_multi_round"
                                                : "budgeted_random_queries";
}

inline GameStrategy parse_game_strategy(std::string_view s) {
  if (s == "budgeted_multi_round") return GameStrategy::kBudgetedMultiRound;
  if (s == "budgeted_random_queries") return GameStrategy::kBudgetedRandomQueries;
  throw InvalidArgument("unknown strategy '" + std::string(s) + "'");
}

struct GameTrial {
  std::size_t queries = 0;
  std::size_t rounds = 0;
  ItemId guess = 0;
  ItemId sink = 0;
  bool success = false;
};

// Largest k' <= k whose multi_round(k', t) fits in `budget` queries (0 if
// not even two items fit).
inline std::size_t affordable_subset(std::size_t k, std::size_t t,
                                     std::size_t budget) {
  for (std::size_t kk = k; kk >= 2; --kk) {
    if (multi_round_query_count(kk, t) <= budget) return kk;
  }
  return 0;
}

// Guesses the sink of a fresh (k, t)-construction using at most t rounds
// and `budget` queries.
//
// kBudgetedMultiRound runs multi_round on a uniformly random subset of the
// largest affordable size. kBudgetedRandomQueries spends budget/t queries
// per round on uniformly random pairs of still-undefeated nodes. Both guess
// uniformly among the candidates when they cannot query.
inline GameTrial play_lowerbound_game(std::size_t k, std::size_t t,
                                      std::size_t budget, GameStrategy strategy,
                                      Rng& rng) {
  const LayeredTournament graph(k, t, rng);
  TournamentOracle oracle(graph);
  GameTrial out;
  out.sink = graph.sink();
  if (strategy == GameStrategy::kBudgetedMultiRound) {
    const std::size_t kk = affordable_subset(k, t, budget);
    if (kk < 2) {
      out.guess = uniform_index(rng, k);
    } else {
      const std::vector<ItemId> subset = sample_without_replacement(k, kk, rng);
      const SelectionResult r = multi_round(subset, t, oracle);
      out.guess = r.winner;
      out.queries = r.queries_total;
      out.rounds = r.rounds_used;
    }
  } else {
    std::vector<std::uint8_t> defeated(k, 0);
    std::vector<ItemId> alive = all_ids(k);
    for (std::size_t round = 0; round < t && alive.size() >= 2; ++round) {
      const std::size_t share = budget / t + (round < budget % t ? 1 : 0);
      if (share == 0) continue;
      oracle.begin_round();
      ++out.rounds;
      std::vector<Query> batch(share);
      for (Query& q : batch) {
        const std::size_t i = uniform_index(rng, alive.size());
        std::size_t j = uniform_index(rng, alive.size() - 1);
        if (j >= i) ++j;
        q = {alive[i], alive[j]};
      }
      for (const Query& q : batch) {
        const ItemId w = oracle.query(q.a, q.b);
        defeated[w == q.a ? q.b : q.a] = 1;
      }
      out.queries += batch.size();
      std::erase_if(alive, [&](ItemId v) { return defeated[v] != 0; });
    }
    out.guess = alive[uniform_index(rng, alive.size())];
  }
  out.success = out.guess == out.sink;
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

// Named value profiles for maxselect.
//
//   spaced     ids get a random permutation of 0, 0.5, 1, ...: every item
//              ties with its neighbours
//   random     i.i.d. uniform on [0, 10)
//   clustered  geometric integer levels: P(value >= v) = 2^{-v}, so a few
//              items sit on top and many near-ties sit below them
inline std::vector<double> make_values(std::string_view profile, std::size_t k,
                                       Rng& rng) {
  std::vector<double> v(k);
  if (profile == "spaced") {
    const std::vector<std::size_t> perm = random_permutation(k, rng);
    for (std::size_t i = 0; i < k; ++i) v[i] = 0.5 * static_cast<double>(perm[i]);
  } else if (profile == "random") {
    for (double& x : v) x = 10.0 * uniform01(rng);
  } else if (profile == "clustered") {
    for (double& x : v) {
      int level = 0;
      while (level < 62 && bernoulli(rng, 0.5)) ++level;
      x = level;
    }
  } else {
    throw InvalidArgument("unknown value profile '" + std::string(profile) + "'");
  }
  return v;
}

inline double approximation_bound(std::string_view algo, std::size_t t) {
  if (algo == "round_robin") return 2.0;
  if (algo == "two_round") return 4.0;
  if (algo == "multi_round") return 2.0 * static_cast<double>(t);
  if (algo == "better") return 3.0;
  throw InvalidArgument("unknown selection algorithm '" + std::string(algo) + "'");
}

struct ExperimentConfig {
  std::string command;  // ni | maxselect | hs | game
  // Instance source for ni and hs: a file, or a generator.
  std::string instance_path;
  std::string generator;  // "" | hard | random
  std::size_t gen_dim = 3;
  std::size_t gen_domain = 16;
  double epsilon = 1.0;
  double alpha = 0.1;
  std::vector<std::size_t> n_sweep;
  std::size_t k = 64;
  std::size_t t = 2;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string adversary = "uniform_random";
  std::string values = "spaced";
  std::string algo;  // maxselect: round_robin|two_round|multi_round|better; hs: better|naive
  std::string strategy = "budgeted_multi_round";
  std::size_t budget = 0;
  NoiseMode noise_mode = NoiseMode::kStrict;
  double beta_fail = 0.1;
  double comparison_constant = 1.0;
  double h_constant = kDefaultHConstant;
  std::size_t threads = 0;  // 0: hardware concurrency; not part of the output

  Json to_json() const {
    Json j{{"command", command},
           {"instance", instance_path},
           {"generator", generator},
           {"gen_dim", gen_dim},
           {"gen_domain", gen_domain},
           {"epsilon", epsilon},
           {"alpha", alpha},
           {"n", n_sweep},
           {"k", k},
           {"t", t},
           {"trials", trials},
           {"seed", seed},
           {"adversary", adversary},
           {"values", values},
           {"algo", algo},
           {"strategy", strategy},
           {"budget", budget},
           {"noise_mode", std::string(ldphs::to_string(noise_mode))},
           {"beta_fail", beta_fail},
           {"comparison_constant", comparison_constant},
           {"h_constant", h_constant}};
    return j;
  }

  static ExperimentConfig from_json(const Json& j) {
    ExperimentConfig c;
    c.command = j.at("command").get<std::string>();
    c.instance_path = j.at("instance").get<std::string>();
    c.generator = j.at("generator").get<std::string>();
    c.gen_dim = j.at("gen_dim").get<std::size_t>();
    c.gen_domain = j.at("gen_domain").get<std::size_t>();
    c.epsilon = j.at("epsilon").get<double>();
    c.alpha = j.at("alpha").get<double>();
    c.n_sweep = j.at("n").get<std::vector<std::size_t>>();
    c.k = j.at("k").get<std::size_t>();
    c.t = j.at("t").get<std::size_t>();
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.adversary = j.at("adversary").get<std::string>();
    c.values = j.at("values").get<std::string>();
    c.algo = j.at("algo").get<std::string>();
    c.strategy = j.at("strategy").get<std::string>();
    c.budget = j.at("budget").get<std::size_t>();
    c.noise_mode = parse_noise_mode(j.at("noise_mode").get<std::string>());
    c.beta_fail = j.at("beta_fail").get<double>();
    c.comparison_constant = j.at("comparison_constant").get<double>();
    c.h_constant = j.at("h_constant").get<double>();
    return c;
  }

  void validate() const {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (t < 1) throw InvalidArgument("t must be >= 1");
    if (command == "ni" || command == "hs") {
      PrivacyParams{epsilon, noise_mode}.validate();
      if (instance_path.empty() && generator.empty()) {
        throw InvalidArgument(command + " needs --instance or --generate");
      }
    }
    if (command == "ni" && n_sweep.empty()) {
      throw InvalidArgument("ni needs --n");
    }
    if (command == "hs" && !(alpha > 0.0 && alpha <= 1.0)) {
      throw InvalidArgument("alpha must be in (0, 1]");
    }
    if (command == "maxselect" || command == "game") {
      if (k < 1) throw InvalidArgument("k must be >= 1");
    }
  }
};

// The instance named by a config; generated instances use the stream
// derive_seed(seed, "instance", 0).
inline Instance load_config_instance(const ExperimentConfig& c) {
  if (!c.instance_path.empty()) return load_instance(c.instance_path);
  if (c.generator == "hard") {
    Instance inst = gen_hard_instance(c.gen_dim, c.alpha);
    inst.meta.true_index = 0;
    inst.meta.beta = 0.0;
    return inst;
  }
  if (c.generator == "random") {
    Rng rng = make_rng(c.seed, "instance");
    Instance inst = gen_random_separated(c.k, c.gen_domain, c.alpha, rng);
    inst.meta.true_index = 0;
    inst.meta.beta = 0.0;
    return inst;
  }
  throw InvalidArgument("unknown generator '" + c.generator + "'");
}

struct ExperimentOutput {
  Table table;
  Json summary;
};

inline Json proportion_json(const Proportion& p) {
  return Json{{"successes", p.successes},
              {"trials", p.trials},
              {"rate", p.rate()},
              {"std_error", p.std_error()}};
}

inline ExperimentOutput run_ni(const ExperimentConfig& c) {
  const Instance inst = load_config_instance(c);
  const Dist& source = inst.source();
  const std::size_t truth =
      inst.meta.true_index.value_or(min_tv_to_set(source, inst.hypotheses).index);
  const PrivacyParams privacy{c.epsilon, c.noise_mode};
  ExperimentOutput out;
  out.table.header = {"trial", "n", "chosen", "true", "success", "L", "Nprime"};
  out.summary = Json::array();
  for (std::size_t point = 0; point < c.n_sweep.size(); ++point) {
    const std::size_t n = c.n_sweep[point];
    auto rows = parallel_trials(
        c.trials,
        [&](std::size_t trial) {
          Rng rng(trial_seed(c.seed, "ni", point * c.trials + trial));
          std::vector<std::size_t> samples(n);
          for (std::size_t& x : samples) x = source.sample(rng);
          const NiResult r = run_noninteractive(inst.hypotheses, samples, privacy, rng);
          return std::vector<Json>{trial,    n,       r.chosen, truth,
                                   r.chosen == truth, r.bound, r.target_size};
        },
        c.threads);
    Proportion p;
    for (auto& row : rows) {
      p.trials += 1;
      p.successes += row[4].get<bool>() ? 1 : 0;
      out.table.rows.push_back(std::move(row));
    }
    Json s = proportion_json(p);
    s["n"] = n;
    out.summary.push_back(std::move(s));
  }
  return out;
}

inline ExperimentOutput run_maxselect(const ExperimentConfig& c) {
  const std::string algo = c.algo.empty() ? "better" : c.algo;
  const double bound = approximation_bound(algo, c.t);
  const TiePolicy policy = parse_tie_policy(c.adversary);
  if (c.values != "spaced" && c.values != "random" && c.values != "clustered") {
    throw InvalidArgument("unknown value profile '" + c.values + "'");
  }
  ExperimentOutput out;
  out.table.header = {"trial",       "k",         "t",       "algo",
                      "adversary",   "winner",    "winner_value",
                      "max_value",   "gap",       "success", "queries",
                      "rounds"};
  auto rows = parallel_trials(
      c.trials,
      [&](std::size_t trial) {
        Rng rng(trial_seed(c.seed, "maxselect", trial));
        std::vector<double> values = make_values(c.values, c.k, rng);
        const double max_value = *std::max_element(values.begin(), values.end());
        GapComparator oracle(values, policy, rng());
        const std::vector<ItemId> ids = all_ids(c.k);
        SelectionResult r;
        if (algo == "round_robin") {
          r = round_robin(ids, oracle);
        } else if (algo == "two_round") {
          r = two_round(ids, oracle);
        } else if (algo == "multi_round") {
          r = multi_round(ids, c.t, oracle);
        } else {
          r = better_multi_round(ids, c.t, oracle, rng, c.h_constant);
        }
        const double gap = max_value - values[r.winner];
        return std::vector<Json>{trial,
                                 c.k,
                                 c.t,
                                 algo,
                                 std::string(to_string(policy)),
                                 r.winner,
                                 values[r.winner],
                                 max_value,
                                 gap,
                                 gap <= bound,
                                 r.queries_total,
                                 r.rounds_used};
      },
      c.threads);
  Proportion p;
  std::vector<double> gaps, queries;
  for (auto& row : rows) {
    p.trials += 1;
    p.successes += row[9].get<bool>() ? 1 : 0;
    gaps.push_back(row[8].get<double>());
    queries.push_back(row[10].get<double>());
    out.table.rows.push_back(std::move(row));
  }
  out.summary = Json{{"success", proportion_json(p)},
                     {"bound", bound},
                     {"gap", summarize(gaps).to_json()},
                     {"queries", summarize(queries).to_json()}};
  return out;
}

inline ExperimentOutput run_hs(const ExperimentConfig& c) {
  const Instance inst = load_config_instance(c);
  const Dist& p = inst.source();
  const std::string algo = c.algo.empty() ? "better" : c.algo;
  if (algo != "better" && algo != "naive") {
    throw InvalidArgument("hs --algo must be better or naive");
  }
  ReductionOptions opt;
  opt.comparison_constant = c.comparison_constant;
  opt.h_constant = c.h_constant;
  const std::size_t k = inst.hypotheses.k();
  const ComparisonBudget budget =
      algo == "better"
          ? comparison_budget(k, c.t, c.epsilon, c.alpha, c.beta_fail, opt)
          : naive_budget(k, c.epsilon, c.alpha, c.beta_fail, opt);
  ExperimentOutput out;
  out.table.header = {"trial", "n_used", "rounds", "chosen",
                      "achieved_tv", "beta", "factor"};
  auto rows = parallel_trials(
      c.trials,
      [&](std::size_t trial) {
        const std::uint64_t s = trial_seed(c.seed, "hs", trial);
        UserPopulation population(p, budget.n_required, s);
        Rng rng(derive_seed(s, "protocol", 0));
        const SelectionOutcome r =
            algo == "better"
                ? hypothesis_select_ldp(inst.hypotheses, population, c.epsilon,
                                        c.alpha, c.beta_fail, c.t, rng, opt)
                : naive_k2_baseline(inst.hypotheses, population, c.epsilon,
                                    c.alpha, c.beta_fail, rng, opt);
        r.transcript.ledger.enforce(c.epsilon);
        const AgnosticScore score =
            agnostic_score(inst.hypotheses[r.chosen], p, inst.hypotheses, c.alpha);
        return std::vector<Json>{trial,
                                 r.transcript.samples_used,
                                 r.transcript.rounds_used(),
                                 r.chosen,
                                 score.achieved,
                                 score.beta,
                                 score.factor ? Json(*score.factor) : Json()};
      },
      c.threads);
  std::vector<double> achieved, used;
  for (auto& row : rows) {
    achieved.push_back(row[4].get<double>());
    used.push_back(row[1].get<double>());
    out.table.rows.push_back(std::move(row));
  }
  out.summary = Json{{"m_total", budget.m_total},
                     {"group_size", budget.group_size},
                     {"n_required", budget.n_required},
                     {"achieved_tv", summarize(achieved).to_json()},
                     {"n_used", summarize(used).to_json()}};
  return out;
}

inline ExperimentOutput run_game(const ExperimentConfig& c) {
  const GameStrategy strategy = parse_game_strategy(c.strategy);
  LayeredTournament::layer_sizes(c.k, c.t);  // fail fast on infeasible k, t
  ExperimentOutput out;
  out.table.header = {"trial", "k", "t", "budget", "queries",
                      "rounds", "guess", "sink", "success"};
  auto rows = parallel_trials(
      c.trials,
      [&](std::size_t trial) {
        Rng rng(trial_seed(c.seed, "game", trial));
        const GameTrial g = play_lowerbound_game(c.k, c.t, c.budget, strategy, rng);
        return std::vector<Json>{trial,     c.k,     c.t,     c.budget, g.queries,
                                 g.rounds,  g.guess, g.sink,  g.success};
      },
      c.threads);
  Proportion p;
  for (auto& row : rows) {
    p.trials += 1;
    p.successes += row[8].get<bool>() ? 1 : 0;
    out.table.rows.push_back(std::move(row));
  }
  out.summary = Json{{"success", proportion_json(p)}};
  return out;
}

inline ExperimentOutput run_experiment(const ExperimentConfig& c) {
  c.validate();
  if (c.command == "ni") return run_ni(c);
  if (c.command == "maxselect") return run_maxselect(c);
  if (c.command == "hs") return run_hs(c);
  if (c.command == "game") return run_game(c);
  throw InvalidArgument("unknown command '" + c.command + "'");
}

// The flattened instance plus the block layout, for inspection.
inline Json flatten_instance_json(const Instance& inst) {
  const FlattenMap map = build_flatten_map(inst.hypotheses);
  Instance flat{map.push_forward(inst.hypotheses), inst.meta, std::nullopt};
  if (inst.truth) flat.truth = map.push_forward(*inst.truth);
  Json j = instance_to_json(flat);
  if (j.contains("alpha")) j["alpha"] = j["alpha"].get<double>() / 2.0;
  Json blocks = Json::array();
  for (const Block& b : map.blocks()) blocks.push_back(Json::array({b.start, b.length}));
  j["blocks"] = std::move(blocks);
  j["source_domain_size"] = map.source_size();
  return j;
}

}  // namespace ldphs

#endif  // LDPHS_HARNESS_HPP_
