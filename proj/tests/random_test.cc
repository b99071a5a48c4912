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

#include "ldphs/random.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

namespace ldphs {
namespace {

TEST(RandomTest, DerivedStreamsReplay) {
  Rng a = make_rng(42, "trial", 7);
  Rng b = make_rng(42, "trial", 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(RandomTest, DerivedStreamsDifferByLabelAndIndex) {
  EXPECT_NE(derive_seed(42, "trial", 0), derive_seed(42, "trial", 1));
  EXPECT_NE(derive_seed(42, "ni", 0), derive_seed(42, "hs", 0));
  EXPECT_NE(derive_seed(1, "ni", 0), derive_seed(2, "ni", 0));
}

TEST(RandomTest, UniformRanges) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = uniform_open01(rng);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_LT(uniform_index(rng, 7), 7u);
  }
}

TEST(RandomTest, UniformIndexIsRoughlyFlat) {
  Rng rng(3);
  std::vector<int> counts(5, 0);
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_index(rng, 5)];
  // Each count ~ Binomial(50000, 0.2): sd ~ 89.
  for (int c : counts) EXPECT_NEAR(c, draws / 5, 450);
}

TEST(RandomTest, SampleWithoutReplacementIsDistinct) {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto s = sample_without_replacement(30, 12, rng);
    EXPECT_EQ(s.size(), 12u);
    EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 12u);
    for (std::size_t x : s) EXPECT_LT(x, 30u);
  }
  EXPECT_EQ(sample_without_replacement(4, 10, rng).size(), 4u);
}

TEST(RandomTest, PermutationIsAPermutation) {
  Rng rng(9);
  auto p = random_permutation(50, rng);
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i], i);
}

TEST(RandomTest, PairCoinIsSymmetricAndKeyed) {
  int heads = 0;
  int differs = 0;
  for (std::size_t a = 0; a < 40; ++a) {
    for (std::size_t b = a + 1; b < 40; ++b) {
      EXPECT_EQ(pair_coin(11, a, b), pair_coin(11, b, a));
      heads += pair_coin(11, a, b) ? 1 : 0;
      differs += pair_coin(11, a, b) != pair_coin(12, a, b) ? 1 : 0;
    }
  }
  // 780 pairs: both counts should sit near 390.
  EXPECT_NEAR(heads, 390, 90);
  EXPECT_NEAR(differs, 390, 90);
}

}  // namespace
}  // namespace ldphs
