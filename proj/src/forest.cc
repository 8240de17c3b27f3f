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
#include <numeric>

#include "pyro/error.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

void CheckFitted(const ForestModel& m) {
  if (!m.fitted()) throw Error(ErrorCode::kUnfittedModel, "forest is not fitted");
}

size_t OutputIndex(const ForestModel& m, int positive_class) {
  return m.type == TaskType::kClassification ? static_cast<size_t>(positive_class) : 0;
}

}  // namespace

int DefaultFeaturesPerSplit(TaskType type, int n_features) {
  const double k = n_features;
  const int v = type == TaskType::kClassification
                    ? static_cast<int>(std::ceil(std::sqrt(k)))
                    : static_cast<int>(std::ceil(k / 3.0));
  return std::max(1, v);
}

std::vector<std::vector<size_t>> DrawBootstrapSamples(size_t n_rows,
                                                      const ForestParams& params) {
  std::vector<std::vector<size_t>> samples(params.n_trees);
  for (int j = 0; j < params.n_trees; ++j) {
    auto& rows = samples[j];
    rows.resize(n_rows);
    if (params.bootstrap) {
      Rng rng(DeriveSeed(params.seed, 2 * j));
      for (auto& r : rows) r = rng.UniformIndex(n_rows);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
  }
  return samples;
}

ForestModel FitForest(const Matrix& X, std::span<const double> y, TaskType type,
                      const ForestParams& params, Exec exec, int n_classes) {
  if (X.rows() == 0) throw Error(ErrorCode::kEmptyData, "cannot fit on empty data");
  if (params.n_trees < 1) {
    throw Error(ErrorCode::kInvalidArgument, "forest needs at least one tree");
  }
  return FitForestOnSamples(X, y, type, params,
                            DrawBootstrapSamples(X.rows(), params), exec,
                            n_classes);
}

ForestModel FitForestOnSamples(const Matrix& X, std::span<const double> y,
                               TaskType type, const ForestParams& params,
                               const std::vector<std::vector<size_t>>& samples,
                               Exec exec, int n_classes) {
  if (X.rows() == 0) throw Error(ErrorCode::kEmptyData, "cannot fit on empty data");
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "X and y differ in length");
  }
  ForestModel m;
  m.type = type;
  m.n_classes = type == TaskType::kClassification ? n_classes : 1;
  m.params = params;
  m.params.n_trees = static_cast<int>(samples.size());
  if (m.params.features_per_split <= 0) {
    m.params.features_per_split =
        DefaultFeaturesPerSplit(type, static_cast<int>(X.cols()));
  }

  if (type == TaskType::kClassification) {
    m.training_mean.assign(n_classes, 0.0);
    for (double v : y) m.training_mean[static_cast<size_t>(v)] += 1.0;
    for (double& v : m.training_mean) v /= static_cast<double>(y.size());
  } else {
    m.training_mean = {std::accumulate(y.begin(), y.end(), 0.0) /
                       static_cast<double>(y.size())};
  }

  TreeParams tp;
  tp.criterion = type == TaskType::kClassification ? Criterion::kGini
                                                   : Criterion::kVariance;
  tp.max_depth = params.max_depth;
  tp.max_leaf_nodes = params.max_leaf_nodes;
  tp.min_samples_split = params.min_samples_split;
  tp.features_per_split = m.params.features_per_split;
  tp.n_classes = n_classes;

  const int n_trees = static_cast<int>(samples.size());
  m.trees.resize(n_trees);
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n_trees; ++j) {
      m.trees[j] = FitCart(X, y, samples[j], tp, DeriveSeed(params.seed, 2 * j + 1));
    }
  } else {
    for (int j = 0; j < n_trees; ++j) {
      m.trees[j] = FitCart(X, y, samples[j], tp, DeriveSeed(params.seed, 2 * j + 1));
    }
  }
  return m;
}

std::vector<double> ForestProba(const ForestModel& m, std::span<const double> x) {
  CheckFitted(m);
  std::vector<double> out(m.trees.front().nodes.front().value.size(), 0.0);
  for (const auto& t : m.trees) {
    const auto& v = t.Value(x);
    for (size_t k = 0; k < out.size(); ++k) out[k] += v[k];
  }
  for (double& v : out) v /= static_cast<double>(m.trees.size());
  return out;
}

double ForestPredict(const ForestModel& m, std::span<const double> x) {
  const auto p = ForestProba(m, x);
  if (m.type == TaskType::kRegression) return p[0];
  return static_cast<double>(std::max_element(p.begin(), p.end()) - p.begin());
}

double ForestScore(const ForestModel& m, std::span<const double> x,
                   int positive_class) {
  return ForestProba(m, x)[OutputIndex(m, positive_class)];
}

Explanation ForestDecompose(const ForestModel& m, std::span<const double> x,
                            int positive_class) {
  CheckFitted(m);
  const size_t k = OutputIndex(m, positive_class);
  const size_t n_features = x.size();
  Explanation e;
  e.features = m.feature_names;
  e.contributions.assign(n_features, 0.0);
  double baseline = 0.0;
  double prediction = 0.0;
  for (const auto& t : m.trees) {
    int i = 0;
    baseline += t.nodes[0].value[k];
    while (!t.nodes[i].is_leaf()) {
      const auto& n = t.nodes[i];
      const int next = x[n.feature] <= n.threshold ? n.left : n.right;
      e.contributions[n.feature] += t.nodes[next].value[k] - n.value[k];
      i = next;
    }
    prediction += t.nodes[i].value[k];
  }
  const double J = static_cast<double>(m.trees.size());
  e.baseline = baseline / J;
  for (double& c : e.contributions) c /= J;
  e.prediction = prediction / J;
  return e;
}

}  // namespace pyro
