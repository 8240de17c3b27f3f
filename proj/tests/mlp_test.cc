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

#include "pyro/mlp.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "gradcheck.h"
#include "pyro/error.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

TEST(MlpTest, GradientMatchesFiniteDifferences) {
  for (const auto& c : testing::GradCases()) {
    for (int seed = 0; seed < 5; ++seed) {
      const auto model = MlpModel::Initialize(c.sizes, c.link, 100 + seed);
      Rng rng(200 + seed);
      std::vector<double> x(c.sizes.front());
      for (double& v : x) v = rng.Normal();
      const double y = c.loss == MlpLoss::kLogistic ? 1.0 : rng.Normal();
      EXPECT_LT(testing::GradientRelativeError(model, x, y, c.loss), 1e-4)
          << "layers " << c.sizes.size() << " seed " << seed;
    }
  }
}

TEST(MlpTest, PreluSlopeGetsGradient) {
  auto model = MlpModel::Initialize({2, 3, 1}, OutputLink::kIdentity, 1);
  const double x[] = {-3.0, -2.0};
  const auto g = Gradient(model, x, 5.0, MlpLoss::kSquared);
  const auto& hidden = model.layers()[0];
  ASSERT_TRUE(hidden.alpha.has_value());
  double total = 0.0;
  for (size_t j = 0; j < hidden.out; ++j) total += std::abs(g[*hidden.alpha + j]);
  EXPECT_GT(total, 0.0);
}

TEST(AdamTest, FirstStepMatchesHandComputation) {
  auto state = AdamState::ForParameters(3, 0.03);
  std::vector<double> params = {1.0, 1.0, 1.0};
  const std::vector<double> g = {0.5, -2.0, 1e-3};
  AdamStep(state, params, g);
  EXPECT_NEAR(params[0], 0.9700000006, 1e-9);
  EXPECT_NEAR(params[1], 1.02999999985, 1e-9);
  EXPECT_NEAR(params[2], 0.970000299997, 1e-9);
  EXPECT_EQ(state.step, 1);
}

TEST(AdamTest, ShapeMismatchThrows) {
  auto state = AdamState::ForParameters(3);
  std::vector<double> params(2);
  const std::vector<double> g(2);
  EXPECT_THROW(AdamStep(state, params, g), Error);
}

TEST(MlpTest, SeparatesTwoBlobs) {
  Rng rng(4);
  Matrix X;
  std::vector<double> y;
  for (int i = 0; i < 400; ++i) {
    const double label = i % 2;
    const double cx = label ? 1.5 : -1.5;
    const double row[] = {cx + 0.6 * rng.Normal(), -cx + 0.6 * rng.Normal()};
    X.AppendRow(row);
    y.push_back(label);
  }
  MlpParams p;
  p.hidden = {8};
  p.epochs = 40;
  p.loss = MlpLoss::kLogistic;
  p.seed = 2;
  const auto m = FitMlp(X, y, p);
  int correct = 0;
  for (size_t i = 0; i < X.rows(); ++i) {
    correct += (Forward(m, X.row(i)) >= 0.5) == (y[i] == 1.0);
  }
  EXPECT_GE(correct / 400.0, 0.95);
}

TEST(MlpTest, LearnsALine) {
  Matrix X;
  std::vector<double> y;
  for (int i = 0; i < 200; ++i) {
    const double row[] = {i / 199.0};
    X.AppendRow(row);
    y.push_back(2.0 * row[0]);
  }
  MlpParams p;
  p.hidden = {16};
  p.epochs = 200;
  p.seed = 1;
  const auto m = FitMlp(X, y, p);
  double sse = 0.0;
  for (size_t i = 0; i < X.rows(); ++i) {
    const double e = Forward(m, X.row(i)) - y[i];
    sse += e * e;
  }
  EXPECT_LT(std::sqrt(sse / X.rows()), 0.05);
}

TEST(MlpTest, EarlyStoppingKeepsBestValidation) {
  Rng rng(9);
  Matrix X, Xv;
  std::vector<double> y, yv;
  for (int i = 0; i < 60; ++i) {
    const double a[] = {rng.Normal(), rng.Normal()};
    X.AppendRow(a);
    y.push_back(rng.Normal());
    const double b[] = {rng.Normal(), rng.Normal()};
    Xv.AppendRow(b);
    yv.push_back(rng.Normal());
  }
  MlpParams p;
  p.hidden = {32};
  p.epochs = 300;
  p.patience = 10;
  const auto m = FitMlp(X, y, p, &Xv, yv);
  EXPECT_LT(m.validation_loss.size(), 300u);
  const double best = *std::min_element(m.validation_loss.begin(),
                                        m.validation_loss.end());
  double loss = 0.0;
  for (size_t i = 0; i < Xv.rows(); ++i) {
    loss += SampleLoss(m, Xv.row(i), yv[i], MlpLoss::kSquared);
  }
  EXPECT_NEAR(loss / Xv.rows(), best, 1e-9 * (1.0 + best));
}

TEST(MlpTest, SerialAndParallelAgreeBitForBit) {
  Rng rng(3);
  Matrix X;
  std::vector<double> y;
  for (int i = 0; i < 150; ++i) {
    const double row[] = {rng.Normal(), rng.Normal(), rng.Normal()};
    X.AppendRow(row);
    y.push_back(row[0] - row[1] * row[2]);
  }
  const auto model = MlpModel::Initialize({3, 12, 1}, OutputLink::kIdentity, 5);
  std::vector<size_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0);
  EXPECT_EQ(BatchGradient(model, X, y, rows, MlpLoss::kSquared, Exec::kSerial),
            BatchGradient(model, X, y, rows, MlpLoss::kSquared, Exec::kParallel));
  MlpParams p;
  p.hidden = {12};
  p.epochs = 15;
  EXPECT_EQ(FitMlp(X, y, p, nullptr, {}, Exec::kSerial).params(),
            FitMlp(X, y, p, nullptr, {}, Exec::kParallel).params());
}

TEST(MlpTest, ZeroEpochsReturnsInitialization) {
  Matrix X(4, 2, 1.0);
  const std::vector<double> y(4, 1.0);
  MlpParams p;
  p.hidden = {3};
  p.epochs = 0;
  p.seed = 7;
  p.standardize_target = false;
  const auto m = FitMlp(X, y, p);
  EXPECT_EQ(m.params(),
            MlpModel::Initialize({2, 3, 1}, OutputLink::kIdentity, 7).params());
}

}  // namespace
}  // namespace pyro
