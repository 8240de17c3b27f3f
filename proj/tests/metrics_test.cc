/*
 * Copyright 2026 The Pyro Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pyro/metrics.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "metric_oracles.h"
#include "pyro/error.h"

namespace pyro {
namespace {

using testing::Vec;

TEST(LogLossTest, MatchesOracle) {
  const auto cases = testing::LogLossCases();
  for (const auto& c : cases) EXPECT_NEAR(LogLoss(c.y, c.p), c.expected, 1e-9);
}

TEST(LogLossTest, PerfectPredictionIsClippedToNearZero) {
  EXPECT_LE(LogLoss(Vec{1}, Vec{1}), 1e-14);
  EXPECT_TRUE(std::isfinite(LogLoss(Vec{1}, Vec{0})));
}

TEST(LogLossTest, DecreasesAsCorrectProbabilityRises) {
  double prev = LogLoss(Vec{1, 0}, Vec{0.1, 0.3});
  for (double p = 0.2; p < 0.99; p += 0.1) {
    const double cur = LogLoss(Vec{1, 0}, Vec{p, 0.3});
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(LogLossTest, Errors) {
  EXPECT_THROW(LogLoss(Vec{1, 0}, Vec{0.5}), Error);
  try {
    LogLoss(Vec{}, Vec{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(RocAucTest, MatchesOracle) {
  const auto cases = testing::AucCases();
  for (const auto& c : cases) EXPECT_NEAR(RocAuc(c.y, c.p), c.expected, 1e-9);
}

TEST(RocAucTest, TiesAndSymmetry) {
  EXPECT_DOUBLE_EQ(RocAuc(Vec{0, 1, 0, 1}, Vec{0.3, 0.3, 0.3, 0.3}), 0.5);
  const Vec y = {0, 1, 1, 0, 1, 0, 1};
  const Vec s = {0.1, 0.7, 0.3, 0.35, 0.9, 0.2, 0.05};
  Vec neg, transformed;
  for (double v : s) {
    neg.push_back(-v);
    transformed.push_back(std::exp(3 * v) + 2);
  }
  EXPECT_NEAR(RocAuc(y, s) + RocAuc(y, neg), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(RocAuc(y, s), RocAuc(y, transformed));
}

TEST(RocAucTest, SingleClassThrows) {
  try {
    RocAuc(Vec{1, 1}, Vec{0.2, 0.3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingleClass);
  }
}

TEST(ConfusionTest, MatchesOracle) {
  const auto cases = testing::ConfusionCases();
  for (const auto& c : cases) {
    const auto s = Confusion(c.y, c.p);
    EXPECT_EQ(s.tp, c.tp);
    EXPECT_EQ(s.fp, c.fp);
    EXPECT_EQ(s.tn, c.tn);
    EXPECT_EQ(s.fn, c.fn);
    EXPECT_NEAR(*s.sensitivity, c.sensitivity, 1e-9);
    EXPECT_NEAR(*s.fallout, c.fallout, 1e-9);
    EXPECT_NEAR(*s.precision, c.precision, 1e-9);
    EXPECT_NEAR(s.accuracy, c.accuracy, 1e-9);
    EXPECT_NEAR(*s.fallout + *s.specificity, 1.0, 1e-12);
    const double fn_rate = static_cast<double>(s.fn) / static_cast<double>(s.tp + s.fn);
    EXPECT_NEAR(*s.sensitivity + fn_rate, 1.0, 1e-12);
  }
}

TEST(ConfusionTest, UndefinedRatesAreFlagged) {
  const auto s = Confusion(Vec{1, 1}, Vec{0.9, 0.8});
  EXPECT_FALSE(s.fallout.has_value());
  EXPECT_FALSE(s.specificity.has_value());
  EXPECT_DOUBLE_EQ(*s.sensitivity, 1.0);
  EXPECT_DOUBLE_EQ(s.accuracy, 1.0);
  EXPECT_FALSE(Confusion(Vec{0, 0}, Vec{0.1, 0.2}).precision.has_value());
}

TEST(RegressionMetricsTest, MatchOracle) {
  const auto cases = testing::RegressionCases();
  for (const auto& c : cases) {
    EXPECT_NEAR(PearsonR(c.a, c.p), c.r, 1e-9);
    EXPECT_NEAR(RSquared(c.a, c.p), c.r2, 1e-9);
    EXPECT_NEAR(Rmse(c.a, c.p), c.rmse, 1e-9);
  }
  EXPECT_NEAR(Rmse(Vec{0, 0}, Vec{3, 4}), 3.5355339059327378, 1e-12);
}

TEST(RegressionMetricsTest, TrivialCases) {
  const Vec a = {3, 1, 4, 1, 5};
  Vec neg, mean;
  for (double v : a) {
    neg.push_back(10 - v);
    mean.push_back(2.8);
  }
  EXPECT_NEAR(PearsonR(a, a), 1.0, 1e-12);
  EXPECT_NEAR(PearsonR(a, neg), -1.0, 1e-12);
  EXPECT_DOUBLE_EQ(RSquared(a, a), 1.0);
  EXPECT_NEAR(RSquared(a, mean), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(Rmse(a, a), 0.0);
}

TEST(RegressionMetricsTest, RmseHomogeneityAndTriangle) {
  const Vec a = {0, 0, 0, 0};
  const Vec e1 = {1, -2, 0.5, 3};
  const Vec e2 = {-0.5, 1, 2, -1};
  Vec scaled, sum;
  for (size_t i = 0; i < e1.size(); ++i) {
    scaled.push_back(-3 * e1[i]);
    sum.push_back(e1[i] + e2[i]);
  }
  EXPECT_NEAR(Rmse(a, scaled), 3 * Rmse(a, e1), 1e-12);
  EXPECT_LE(Rmse(a, sum), Rmse(a, e1) + Rmse(a, e2) + 1e-12);
}

TEST(RegressionMetricsTest, ZeroVariance) {
  try {
    RSquared(Vec{0, 0, 0, 0}, Vec{1, 1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVariance);
  }
  EXPECT_THROW(PearsonR(Vec{1, 2, 3}, Vec{4, 4, 4}), Error);
}

}  // namespace
}  // namespace pyro
