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

#ifndef PYRO_FOREST_H_
#define PYRO_FOREST_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pyro/explanation.h"
#include "pyro/matrix.h"
#include "pyro/tree.h"

namespace pyro {

enum class TaskType { kClassification, kRegression };

struct ForestParams {
  int n_trees = 200;
  int max_leaf_nodes = 50;
  int min_samples_split = 5;
  int max_depth = -1;
  bool bootstrap = true;
  int features_per_split = 0;  // 0: ceil(sqrt(K)) classification, ceil(K/3) regression
  uint64_t seed = 0;
};

struct ForestModel {
  TaskType type = TaskType::kRegression;
  int n_classes = 2;
  std::vector<std::string> feature_names;
  // Training-set mean (regression) or class frequencies (classification).
  std::vector<double> training_mean;
  ForestParams params;
  std::vector<Tree> trees;

  bool fitted() const { return !trees.empty(); }
};

int DefaultFeaturesPerSplit(TaskType type, int n_features);

// Trees are fit in parallel under Exec::kParallel from bootstrap samples that
// are drawn up front, so both policies give bit-identical forests.
ForestModel FitForest(const Matrix& X, std::span<const double> y, TaskType type,
                      const ForestParams& params, Exec exec = Exec::kParallel,
                      int n_classes = 2);

// Same, with explicit per-tree sample rows (one list per tree).
ForestModel FitForestOnSamples(const Matrix& X, std::span<const double> y,
                               TaskType type, const ForestParams& params,
                               const std::vector<std::vector<size_t>>& samples,
                               Exec exec = Exec::kParallel, int n_classes = 2);

std::vector<std::vector<size_t>> DrawBootstrapSamples(size_t n_rows,
                                                      const ForestParams& params);

// Mean of per-tree leaf class frequencies.
std::vector<double> ForestProba(const ForestModel& m, std::span<const double> x);
// Class with the highest averaged frequency (lowest index on ties), or the
// mean of per-tree leaf means for regression.
double ForestPredict(const ForestModel& m, std::span<const double> x);
// Regression mean, or the probability of `positive_class`.
double ForestScore(const ForestModel& m, std::span<const double> x,
                   int positive_class = 1);

// Walks each tree from root to leaf crediting the change in node value at
// every split to the split feature, then averages over trees. The baseline is
// the mean root value (the training mean when bootstrap is off), so
// baseline + sum(contributions) == ForestScore.
Explanation ForestDecompose(const ForestModel& m, std::span<const double> x,
                            int positive_class = 1);

}  // namespace pyro

#endif  // PYRO_FOREST_H_
