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

#include "pyro/forest.h"

#include <cmath>

#include <gtest/gtest.h>

#include "pyro/dataset.h"
#include "pyro/rng.h"
#include "test_util.h"

namespace pyro {
namespace {

struct Data {
  Matrix X;
  std::vector<double> fr;
  std::vector<double> sp;
};

Data BenchmarkData(size_t n, uint64_t seed) {
  const Dataset ds = testing::Benchmark(n, seed);
  std::vector<size_t> rows(ds.records.size());
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return {TreeMatrix(ds, Task::kFireResistance, rows),
          Targets(ds, Task::kFireResistance, rows),
          Targets(ds, Task::kSpalling, rows)};
}

ForestParams SmallForest() {
  ForestParams p;
  p.n_trees = 25;
  p.seed = 3;
  return p;
}

TEST(ForestTest, DecompositionIdentityRegression) {
  const Data d = BenchmarkData(300, 1);
  const auto m = FitForest(d.X, d.fr, TaskType::kRegression, SmallForest());
  for (size_t i = 0; i < d.X.rows(); ++i) {
    const auto e = ForestDecompose(m, d.X.row(i));
    double sum = e.baseline;
    for (double c : e.contributions) sum += c;
    ASSERT_NEAR(sum, ForestScore(m, d.X.row(i)), 1e-12);
    ASSERT_EQ(e.prediction, ForestScore(m, d.X.row(i)));
  }
}

TEST(ForestTest, DecompositionIdentityClassification) {
  const Data d = BenchmarkData(300, 2);
  const auto m = FitForest(d.X, d.sp, TaskType::kClassification, SmallForest());
  for (size_t i = 0; i < d.X.rows(); ++i) {
    const auto e = ForestDecompose(m, d.X.row(i));
    double sum = e.baseline;
    for (double c : e.contributions) sum += c;
    ASSERT_NEAR(sum, ForestScore(m, d.X.row(i)), 1e-12);
  }
}

TEST(ForestTest, BaselineIsTrainingMeanWithoutBootstrap) {
  const Data d = BenchmarkData(200, 4);
  ForestParams p = SmallForest();
  p.bootstrap = false;
  const auto m = FitForest(d.X, d.fr, TaskType::kRegression, p);
  double mean = 0.0;
  for (double v : d.fr) mean += v;
  mean /= d.fr.size();
  EXPECT_NEAR(ForestDecompose(m, d.X.row(0)).baseline, mean, 1e-9);
}

TEST(ForestTest, SerialAndParallelAgreeBitForBit) {
  const Data d = BenchmarkData(300, 5);
  const auto a = FitForest(d.X, d.fr, TaskType::kRegression, SmallForest(),
                           Exec::kSerial);
  const auto b = FitForest(d.X, d.fr, TaskType::kRegression, SmallForest(),
                           Exec::kParallel);
  ASSERT_EQ(a.trees.size(), b.trees.size());
  for (size_t t = 0; t < a.trees.size(); ++t) {
    ASSERT_EQ(a.trees[t].nodes.size(), b.trees[t].nodes.size());
    for (size_t k = 0; k < a.trees[t].nodes.size(); ++k) {
      EXPECT_EQ(a.trees[t].nodes[k].feature, b.trees[t].nodes[k].feature);
      EXPECT_EQ(a.trees[t].nodes[k].threshold, b.trees[t].nodes[k].threshold);
      EXPECT_EQ(a.trees[t].nodes[k].value, b.trees[t].nodes[k].value);
    }
  }
}

TEST(ForestTest, LeafLimitHolds) {
  const Data d = BenchmarkData(300, 6);
  const auto m = FitForest(d.X, d.fr, TaskType::kRegression, SmallForest());
  for (const auto& t : m.trees) EXPECT_LE(t.LeafCount(), 50u);
}

TEST(ForestTest, ProbabilitiesSumToOne) {
  const Data d = BenchmarkData(200, 7);
  const auto m = FitForest(d.X, d.sp, TaskType::kClassification, SmallForest());
  for (size_t i = 0; i < 20; ++i) {
    const auto p = ForestProba(m, d.X.row(i));
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
    EXPECT_EQ(ForestPredict(m, d.X.row(i)), p[1] > p[0] ? 1.0 : 0.0);
  }
}

TEST(ForestTest, FeaturesPerSplitDefaults) {
  EXPECT_EQ(DefaultFeaturesPerSplit(TaskType::kClassification, 12), 4);
  EXPECT_EQ(DefaultFeaturesPerSplit(TaskType::kRegression, 12), 4);
  EXPECT_EQ(DefaultFeaturesPerSplit(TaskType::kClassification, 10), 4);
  EXPECT_EQ(DefaultFeaturesPerSplit(TaskType::kRegression, 10), 4);
}

}  // namespace
}  // namespace pyro
