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

#include "ldphs/ldp.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace ldphs {
namespace {

TEST(RandomizedResponseTest, KeepProbability) {
  EXPECT_NEAR(rr_keep_probability(std::log(3.0)), 0.75, 1e-15);
  EXPECT_GE(rr_keep_probability(20.0), 1.0 - 1e-8);
  EXPECT_NEAR(rr_keep_probability(1.0), std::exp(1.0) / (1.0 + std::exp(1.0)),
              1e-15);
}

TEST(RandomizedResponseTest, LikelihoodRatioIsExactlyEToTheEpsilon) {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    double worst = 0.0;
    for (int out : {0, 1}) {
      worst = std::max(worst, rr_likelihood(out, 0, eps) / rr_likelihood(out, 1, eps));
      worst = std::max(worst, rr_likelihood(out, 1, eps) / rr_likelihood(out, 0, eps));
    }
    EXPECT_NEAR(worst, std::exp(eps), 1e-12 * std::exp(eps));
  }
}

TEST(RandomizedResponseTest, EmpiricalKeepRate) {
  Rng rng(5);
  const double eps = std::log(3.0);
  const int n = 100000;
  int kept = 0;
  for (int i = 0; i < n; ++i) kept += randomized_response(1, eps, rng);
  EXPECT_NEAR(static_cast<double>(kept) / n, 0.75, 3 * std::sqrt(0.1875 / n));
  EXPECT_THROW(randomized_response(2, eps, rng), InvalidArgument);
}

TEST(DebiasTest, PlugIns) {
  for (double eps : {0.3, 1.0, 4.0}) {
    const double e = std::exp(eps);
    EXPECT_NEAR(rr_debias(1.0 / (e + 1.0), eps), 0.0, 1e-12);
    EXPECT_NEAR(rr_debias(e / (e + 1.0), eps), 1.0, 1e-12);
  }
}

TEST(DebiasTest, InvertsTheBiasMap) {
  for (double eps : {0.2, 1.0, 3.0}) {
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      EXPECT_NEAR(rr_debias(rr_expected_mean(p, eps), eps), p, 1e-12);
    }
  }
}

TEST(DebiasTest, IsNotClamped) {
  EXPECT_LT(rr_debias(0.0, 1.0), 0.0);
  EXPECT_GT(rr_debias(1.0, 1.0), 1.0);
}

TEST(DebiasTest, MonteCarloUnbiased) {
  Rng rng(7);
  const double eps = 1.0;
  const double p = 0.3;
  const int n = 100000;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    ones += randomized_response(bernoulli(rng, p) ? 1 : 0, eps, rng);
  }
  const double est = rr_debias(static_cast<double>(ones) / n, eps);
  const double m = rr_expected_mean(p, eps);
  const double e = std::exp(eps);
  const double se = (e + 1) / (e - 1) * std::sqrt(m * (1 - m) / n);
  EXPECT_NEAR(est, p, 3 * se);
}

TEST(LaplaceTest, ZeroSensitivityIsNoiseless) {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(laplace_noise(0.0, 1.0, NoiseMode::kStrict, rng), 0.0);
  }
}

TEST(LaplaceTest, ModesDifferByExactlyTwo) {
  for (double l : {0.5, 1.0, 3.7}) {
    for (double eps : {0.25, 1.0, 2.0}) {
      EXPECT_DOUBLE_EQ(laplace_scale(l, eps, NoiseMode::kStrict),
                       2.0 * laplace_scale(l, eps, NoiseMode::kPaperExact));
      EXPECT_DOUBLE_EQ(laplace_scale(l, eps, NoiseMode::kPaperExact), l / eps);
    }
  }
  EXPECT_THROW(laplace_scale(-1.0, 1.0, NoiseMode::kStrict), InvalidArgument);
}

TEST(LaplaceTest, VarianceIsTwiceScaleSquared) {
  Rng rng(3);
  const double scale = 1.7;
  const int n = 1000000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_laplace(scale, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(var / (2 * scale * scale), 1.0, 0.02);
  EXPECT_NEAR(mean, 0.0, 4 * std::sqrt(2.0) * scale / std::sqrt(n));
}

TEST(LaplaceTest, StrictModeRatioBoundOverTheFullRange) {
  // Inputs anywhere in [-L, L]; the worst pair is the two endpoints.
  const double l = 2.3;
  for (double eps : {0.5, 1.0, 2.0}) {
    const double scale = laplace_scale(l, eps, NoiseMode::kStrict);
    for (int i = 0; i < 100; ++i) {
      const double y = -3 * l + 6 * l * i / 99.0;
      const double ratio = laplace_density(y - l, scale) / laplace_density(y + l, scale);
      EXPECT_LE(ratio, std::exp(eps) + 1e-9);
      EXPECT_LE(1.0 / ratio, std::exp(eps) + 1e-9);
    }
  }
}

TEST(LaplaceTest, PaperModeSpendsTwiceTheBudgetOnTheFullRange) {
  const double l = 1.0, eps = 1.0;
  const double scale = laplace_scale(l, eps, NoiseMode::kPaperExact);
  const double ratio = laplace_density(l - 5, scale) / laplace_density(-l - 5, scale);
  EXPECT_NEAR(ratio, std::exp(2 * eps), 1e-9);
}

TEST(PrivacyParamsTest, Validates) {
  EXPECT_NO_THROW((PrivacyParams{1.0, NoiseMode::kStrict}.validate()));
  EXPECT_NO_THROW((PrivacyParams{10.0, NoiseMode::kStrict}.validate()));
  EXPECT_THROW((PrivacyParams{0.0, NoiseMode::kStrict}.validate()), InvalidArgument);
  EXPECT_THROW((PrivacyParams{10.5, NoiseMode::kStrict}.validate()), InvalidArgument);
  EXPECT_EQ(parse_noise_mode("strict"), NoiseMode::kStrict);
  EXPECT_EQ(parse_noise_mode("paper"), NoiseMode::kPaperExact);
  EXPECT_THROW(parse_noise_mode("loose"), InvalidArgument);
}

TEST(PrivacyLedgerTest, SingleUserPasses) {
  PrivacyLedger ledger;
  ledger.record(0, 0, Mechanism::kRandomizedResponse, 0.5);
  EXPECT_TRUE(ledger.check(0.5));
  EXPECT_TRUE(ledger.each_user_spent_exactly_once(1, 0.5));
}

TEST(PrivacyLedgerTest, TwoRoundsFail) {
  PrivacyLedger ledger;
  ledger.record(3, 1, Mechanism::kRandomizedResponse, 0.5);
  ledger.record(3, 2, Mechanism::kRandomizedResponse, 0.5);
  const LedgerCheck c = ledger.check(10.0);
  EXPECT_FALSE(c);
  EXPECT_NE(c.reason.find("rounds"), std::string::npos);
  EXPECT_THROW(ledger.enforce(10.0), ProtocolViolation);
}

TEST(PrivacyLedgerTest, OverspendFails) {
  PrivacyLedger ledger;
  ledger.record(0, 0, Mechanism::kLaplace, 0.6);
  ledger.record(0, 0, Mechanism::kLaplace, 0.6);
  EXPECT_FALSE(ledger.check(1.0));
  EXPECT_TRUE(ledger.check(1.2));
  EXPECT_FALSE(ledger.each_user_spent_exactly_once(1, 0.6));
}

TEST(PrivacyLedgerTest, GroupsOfOneMessageEachPass) {
  PrivacyLedger ledger;
  for (std::size_t u = 0; u < 40; ++u) ledger.record(u, 0, Mechanism::kLaplace, 1.0);
  EXPECT_TRUE(ledger.check(1.0));
  EXPECT_TRUE(ledger.each_user_spent_exactly_once(40, 1.0));
  EXPECT_FALSE(ledger.each_user_spent_exactly_once(41, 1.0));
}

}  // namespace
}  // namespace ldphs
