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

#include "ldphs/comparator.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace ldphs {
namespace {

constexpr TiePolicy kAllPolicies[] = {TiePolicy::kFavorLower, TiePolicy::kFavorHigher,
                                      TiePolicy::kUniformRandom,
                                      TiePolicy::kGreedyAdaptive};

TEST(GapComparatorTest, Examples) {
  GapComparator far({0.0, 5.0}, TiePolicy::kFavorLower);
  far.begin_round();
  EXPECT_EQ(far.query(0, 1), 1u);
  EXPECT_EQ(far.query(1, 0), 1u);

  GapComparator close({0.0, 0.5}, TiePolicy::kFavorLower);
  close.begin_round();
  EXPECT_EQ(close.query(0, 1), 0u);

  GapComparator higher({0.0, 0.5}, TiePolicy::kFavorHigher);
  higher.begin_round();
  EXPECT_EQ(higher.query(0, 1), 1u);

  // A gap of exactly 1 is still a tie.
  GapComparator edge({0.0, 1.0}, TiePolicy::kFavorLower);
  edge.begin_round();
  EXPECT_EQ(edge.query(1, 0), 0u);
}

TEST(GapComparatorTest, TruthfulAboveTheGapUnderEveryPolicy) {
  Rng rng(3);
  std::vector<double> values(50);
  for (double& v : values) v = 10.0 * uniform01(rng);
  for (TiePolicy policy : kAllPolicies) {
    GapComparator oracle(values, policy, 9);
    oracle.begin_round();
    for (int i = 0; i < 10000; ++i) {
      const ItemId a = uniform_index(rng, 50);
      ItemId b = uniform_index(rng, 49);
      if (b >= a) ++b;
      const ItemId w = oracle.query(a, b);
      ASSERT_TRUE(w == a || w == b);
      const ItemId l = w == a ? b : a;
      EXPECT_GE(values[w] - values[l], -1.0) << to_string(policy);
    }
  }
}

TEST(GapComparatorTest, RepeatsAgree) {
  Rng rng(5);
  std::vector<double> values(30);
  for (double& v : values) v = 3.0 * uniform01(rng);
  for (TiePolicy policy : kAllPolicies) {
    GapComparator oracle(values, policy, 21);
    oracle.begin_round();
    std::vector<ItemId> first;
    for (ItemId a = 0; a < 30; ++a) {
      for (ItemId b = a + 1; b < 30; ++b) first.push_back(oracle.query(a, b));
    }
    std::size_t i = 0;
    for (ItemId a = 0; a < 30; ++a) {
      for (ItemId b = a + 1; b < 30; ++b) {
        EXPECT_EQ(oracle.query(b, a), first[i++]) << to_string(policy);
      }
    }
  }
}

TEST(GapComparatorTest, UniformRandomIsRoughlyFair) {
  const std::size_t k = 200;
  GapComparator oracle(std::vector<double>(k, 0.0), TiePolicy::kUniformRandom, 4);
  oracle.begin_round();
  std::size_t low = 0, total = 0;
  for (ItemId a = 0; a < k; ++a) {
    for (ItemId b = a + 1; b < k; ++b) {
      low += oracle.query(a, b) == a ? 1 : 0;
      ++total;
    }
  }
  const double rate = static_cast<double>(low) / static_cast<double>(total);
  EXPECT_NEAR(rate, 0.5, 4 * std::sqrt(0.25 / static_cast<double>(total)));
}

TEST(GapComparatorTest, GreedyAdaptiveFavorsTheItemThatLostMore) {
  GapComparator oracle({0.0, 0.5, 0.2}, TiePolicy::kGreedyAdaptive);
  oracle.begin_round();
  // No losses yet: lower value wins.
  EXPECT_EQ(oracle.query(1, 2), 2u);
  // 1 has lost once, 0 has not.
  EXPECT_EQ(oracle.query(0, 1), 1u);
  // 0 has lost once and 2 none.
  EXPECT_EQ(oracle.query(0, 2), 0u);
}

TEST(GapComparatorTest, GreedyAdaptiveUsesTheSparseMemoForLargeK) {
  const std::size_t k = 3000;
  std::vector<double> values(k);
  for (std::size_t i = 0; i < k; ++i) values[i] = 0.001 * static_cast<double>(i);
  GapComparator oracle(values, TiePolicy::kGreedyAdaptive);
  oracle.begin_round();
  const ItemId w = oracle.query(2999, 0);
  EXPECT_EQ(w, 2999u);  // gap 2.999
  const ItemId t = oracle.query(5, 6);
  EXPECT_EQ(oracle.query(6, 5), t);
}

TEST(ComparatorOracleTest, CountersAndErrors) {
  GapComparator oracle({0.0, 1.0, 2.0}, TiePolicy::kFavorLower);
  EXPECT_THROW(oracle.query(0, 1), ProtocolViolation);
  oracle.begin_round();
  oracle.query(0, 1);
  oracle.query(1, 2);
  oracle.begin_round();
  oracle.query(0, 2);
  EXPECT_EQ(oracle.queries_total(), 3u);
  EXPECT_EQ(oracle.rounds(), 2u);
  EXPECT_EQ(oracle.queries_per_round(), (std::vector<std::size_t>{2, 1}));
  EXPECT_THROW(oracle.query(0, 0), InvalidArgument);
  EXPECT_THROW(oracle.query(0, 3), InvalidArgument);
  EXPECT_THROW(GapComparator({0.0, std::nan("")}, TiePolicy::kFavorLower),
               InvalidArgument);
}

TEST(TiePolicyTest, ParseRoundTrip) {
  for (TiePolicy p : kAllPolicies) EXPECT_EQ(parse_tie_policy(to_string(p)), p);
  EXPECT_EQ(parse_tie_policy("uniform"), TiePolicy::kUniformRandom);
  EXPECT_EQ(parse_tie_policy("greedy"), TiePolicy::kGreedyAdaptive);
  EXPECT_THROW(parse_tie_policy("honest"), InvalidArgument);
}

TEST(LayeredTournamentTest, LayerSizes) {
  EXPECT_EQ(LayeredTournament::layer_sizes(64, 2),
            (std::vector<std::size_t>{64, 16, 2}));
  EXPECT_EQ(LayeredTournament::layer_sizes(128, 3),
            (std::vector<std::size_t>{128, 64, 16, 2}));
  EXPECT_EQ(LayeredTournament::layer_sizes(4, 1), (std::vector<std::size_t>{4, 2}));
  EXPECT_THROW(LayeredTournament::layer_sizes(3, 1), Infeasible);
  EXPECT_THROW(LayeredTournament::layer_sizes(4, 3), Infeasible);
  EXPECT_THROW(LayeredTournament::layer_sizes(64, 0), InvalidArgument);
}

TEST(LayeredTournamentTest, LayerSizesMatchTheFormulaWhenRoomy) {
  for (std::size_t k : {256u, 1000u, 4096u}) {
    for (std::size_t t : {2u, 3u}) {
      const auto sizes = LayeredTournament::layer_sizes(k, t);
      const double denom = std::pow(2.0, t) - 1.0;
      for (std::size_t q = 1; q < t; ++q) {
        const double want =
            std::pow(static_cast<double>(k), (std::pow(2.0, t) - std::pow(2.0, q)) / denom);
        EXPECT_LE(std::abs(static_cast<double>(sizes[q]) - want), 0.5 + 1e-9);
      }
    }
  }
}

TEST(LayeredTournamentTest, SinkBeatsEveryoneAndRunnerUpBeatsAllButTheSink) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Rng rng(seed);
    const LayeredTournament g(64, 2, rng);
    const ItemId s = sink_of(g);
    std::size_t sink_in = 0, runner_losses = 0;
    for (ItemId v = 0; v < 64; ++v) {
      if (v != s) sink_in += g.winner(s, v) == s ? 1 : 0;
      if (v != g.runner_up()) {
        runner_losses += g.winner(g.runner_up(), v) == v ? 1 : 0;
      }
    }
    EXPECT_EQ(sink_in, 63u);
    EXPECT_EQ(runner_losses, 1u);
    EXPECT_EQ(g.layer_of(s), 2u);
  }
}

TEST(LayeredTournamentTest, CrossLayerEdgesPointUp) {
  Rng rng(8);
  const LayeredTournament g(200, 3, rng);
  std::vector<std::size_t> count(4, 0);
  for (ItemId a = 0; a < 200; ++a) {
    ++count[g.layer_of(a)];
    for (ItemId b = a + 1; b < 200; ++b) {
      const ItemId w = g.winner(a, b);
      EXPECT_EQ(w, g.winner(b, a));
      if (g.layer_of(a) != g.layer_of(b)) {
        EXPECT_EQ(w, g.layer_of(a) > g.layer_of(b) ? a : b);
      }
    }
  }
  const auto& sizes = g.sizes();
  for (std::size_t q = 0; q < 3; ++q) EXPECT_EQ(count[q], sizes[q] - sizes[q + 1]);
  EXPECT_EQ(count[3], 2u);
}

// Every edge must be a legal answer of a gap comparator on the values.
TEST(LayeredTournamentTest, ValuesExplainEveryEdge) {
  for (std::uint64_t seed : {5u, 6u}) {
    Rng rng(seed);
    const LayeredTournament g(128, 3, rng);
    for (double tau : {1.0, 2.5}) {
      const auto& x = g.values(tau);
      for (ItemId a = 0; a < 128; ++a) {
        for (ItemId b = 0; b < 128; ++b) {
          if (a == b) continue;
          const ItemId w = g.winner(a, b);
          const ItemId l = w == a ? b : a;
          EXPECT_GE(x[w] - x[l], -1.0);
        }
      }
      // The sink is alone at the top.
      for (ItemId v = 0; v < 128; ++v) {
        if (v != g.sink()) {
          EXPECT_GT(x[g.sink()] - x[v], 1.0);
        }
      }
    }
  }
}

TEST(TournamentOracleTest, AnswersByEdges) {
  Rng rng(12);
  const LayeredTournament g(20, 1, rng);
  TournamentOracle oracle(g);
  oracle.begin_round();
  for (ItemId a = 0; a < 20; ++a) {
    for (ItemId b = 0; b < 20; ++b) {
      if (a != b) {
        EXPECT_EQ(oracle.query(a, b), g.winner(a, b));
      }
    }
  }
  EXPECT_EQ(oracle.queries_total(), 380u);
}

}  // namespace
}  // namespace ldphs
