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

#include "ldphs/flatten.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace ldphs {
namespace {

using ::ldphs::testing::chi_square_critical;
using ::ldphs::testing::chi_square_statistic;
using ::ldphs::testing::random_set;

// Law of apply(a) written out directly from the mixing rule, independent of
// push_forward's bookkeeping.
std::vector<double> apply_law(const FlattenMap& map, std::size_t a) {
  const double n_prime = static_cast<double>(map.target_size());
  std::vector<double> law(map.target_size(), 0.0);
  const Block& blk = map.block(a);
  for (std::size_t b = 0; b < map.target_size(); ++b) {
    if (blk.length == 0) {
      law[b] = 1.0 / n_prime;
    } else {
      law[b] = 0.5 / n_prime + (blk.contains(b) ? 0.5 / blk.length : 0.0);
    }
  }
  return law;
}

TEST(FlattenMapTest, Examples) {
  const FlattenMap half = build_flatten_map(HypothesisSet({make_dist({0.5, 0.5})}));
  EXPECT_EQ(half.target_size(), 2u);
  EXPECT_EQ(half.block(0).length, 1u);
  EXPECT_EQ(half.block(1).length, 1u);

  const FlattenMap point = build_flatten_map(HypothesisSet({make_dist({1, 0})}));
  EXPECT_EQ(point.target_size(), 2u);
  EXPECT_EQ(point.block(0).length, 2u);
  EXPECT_EQ(point.block(1).length, 0u);
}

TEST(FlattenMapTest, BlocksTileTheTarget) {
  Rng rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const HypothesisSet q = random_set(1 + uniform_index(rng, 6),
                                       2 + uniform_index(rng, 20), rng, 0.3);
    const FlattenMap map = build_flatten_map(q);
    std::size_t next = 0;
    for (std::size_t a = 0; a < q.alphabet_size(); ++a) {
      double m = 0.0;
      for (const Dist& qi : q) m = std::max(m, qi[a]);
      const Block& blk = map.block(a);
      EXPECT_EQ(blk.start, next);
      EXPECT_EQ(blk.length == 0, m == 0.0);
      for (std::size_t b = blk.start; b < blk.start + blk.length; ++b) {
        EXPECT_EQ(map.owner(b), a);
      }
      next += blk.length;
    }
    EXPECT_EQ(next, map.target_size());
  }
}

TEST(FlattenMapTest, ApplyThreeQuarters) {
  // N' = 2 and S_1 = {1}: P(1) = 1/2 + 1/4.
  const FlattenMap map = build_flatten_map(HypothesisSet({make_dist({0.5, 0.5})}));
  Rng rng(11);
  const int draws = 100000;
  int ones = 0;
  for (int i = 0; i < draws; ++i) ones += map.apply(1, rng) == 1 ? 1 : 0;
  const double se = std::sqrt(0.75 * 0.25 / draws);
  EXPECT_NEAR(static_cast<double>(ones) / draws, 0.75, 3 * se);
  EXPECT_NEAR(map.push_forward(Dist::point_mass(2, 1))[1], 0.75, 1e-15);
}

TEST(FlattenMapTest, EmptyBlockIsUniform) {
  const FlattenMap map =
      build_flatten_map(HypothesisSet({make_dist({1, 1, 0}), make_dist({2, 1, 0})}));
  ASSERT_EQ(map.block(2).length, 0u);
  const Dist out = map.push_forward(Dist::point_mass(3, 2));
  EXPECT_EQ(out, Dist::uniform(map.target_size()));
}

TEST(FlattenMapTest, ApplyRejectsOutOfRange) {
  const FlattenMap map = build_flatten_map(HypothesisSet({make_dist({1, 1})}));
  Rng rng(1);
  EXPECT_THROW(map.apply(2, rng), InvalidArgument);
  EXPECT_THROW(map.push_forward(make_dist({1, 1, 1})), InvalidArgument);
}

TEST(PushForwardTest, MatchesTheMixingRule) {
  Rng rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const HypothesisSet q = random_set(1 + uniform_index(rng, 5),
                                       2 + uniform_index(rng, 15), rng, 0.3);
    const FlattenMap map = build_flatten_map(q);
    const Dist d = ::ldphs::testing::random_dist(q.alphabet_size(), rng, 0.2);
    std::vector<double> want(map.target_size(), 0.0);
    for (std::size_t a = 0; a < q.alphabet_size(); ++a) {
      const std::vector<double> law = apply_law(map, a);
      for (std::size_t b = 0; b < law.size(); ++b) want[b] += d[a] * law[b];
    }
    const Dist got = map.push_forward(d);
    for (std::size_t b = 0; b < want.size(); ++b) {
      EXPECT_NEAR(got[b], want[b], 1e-14);
    }
  }
}

TEST(PushForwardTest, UniformSourceWithEqualBlocksIsUniform) {
  const HypothesisSet q({Dist::uniform(5)});
  const FlattenMap map = build_flatten_map(q);
  EXPECT_EQ(map.target_size(), 5u);
  const Dist out = map.push_forward(Dist::uniform(5));
  for (std::size_t b = 0; b < 5; ++b) EXPECT_NEAR(out[b], 0.2, 1e-15);
}

TEST(PushForwardTest, MonteCarloAgreesWithExactLaw) {
  Rng rng(19);
  const HypothesisSet q = random_set(3, 6, rng, 0.2);
  const FlattenMap map = build_flatten_map(q);
  const Dist exact = map.push_forward(q[0]);
  std::vector<std::size_t> counts(map.target_size(), 0);
  for (int i = 0; i < 100000; ++i) ++counts[map.apply(q[0].sample(rng), rng)];
  EXPECT_LT(chi_square_statistic(counts, exact),
            chi_square_critical(map.target_size() - 1));
}

TEST(PushForwardTest, MassBoundsAndTvHalving) {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t k = 1 + uniform_index(rng, 12);
    const std::size_t n = 1 + uniform_index(rng, 40);
    const HypothesisSet q = random_set(k, n, rng, 0.25);
    const FlattenMap map = build_flatten_map(q);
    const double n_prime = static_cast<double>(map.target_size());
    EXPECT_GE(map.target_size(), n);
    EXPECT_LE(map.target_size(), (k + 1) * n);
    const HypothesisSet flat = map.push_forward(q);
    for (const Dist& f : flat) {
      for (double w : f.weights()) {
        EXPECT_GE(w, 1.0 / (2.0 * n_prime));
        EXPECT_LE(w, 1.0 / static_cast<double>(n));
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        EXPECT_NEAR(tv_distance(flat[i], flat[j]), tv_distance(q[i], q[j]) / 2,
                    1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace ldphs
