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

#include "pyro/gbt.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pyro/error.h"

namespace pyro {
namespace {

constexpr double kProbClip = 1e-15;

double PointLoss(GbtLoss loss, double margin, double y) {
  if (loss == GbtLoss::kSquared) return (margin - y) * (margin - y);
  const double p = std::clamp(Sigmoid(margin), kProbClip, 1.0 - kProbClip);
  return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
}

}  // namespace

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

GbtModel FitGbt(const Matrix& X, std::span<const double> y,
                const GbtParams& params, GbtLoss loss) {
  const size_t n = X.rows();
  if (n == 0) throw Error(ErrorCode::kEmptyData, "cannot fit on empty data");
  if (y.size() != n) throw Error(ErrorCode::kLengthMismatch, "X and y differ in length");

  GbtModel m;
  m.loss = loss;
  m.params = params;
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  if (loss == GbtLoss::kSquared) {
    m.base_score = mean;
  } else {
    const double p = std::clamp(mean, 1e-6, 1.0 - 1e-6);
    m.base_score = std::log(p / (1.0 - p));
  }

  std::vector<double> margin(n, m.base_score);
  std::vector<double> point(n);
  auto record_loss = [&]() {
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) total += point[i];
    m.training_loss.push_back(total / static_cast<double>(n));
  };
  for (size_t i = 0; i < n; ++i) point[i] = PointLoss(loss, margin[i], y[i]);
  record_loss();

  TreeParams tp;
  tp.criterion = Criterion::kVariance;
  tp.max_depth = params.max_depth;
  tp.min_samples_split = params.min_samples_split;

  std::vector<double> grad(n), hess(n), neg_grad(n);
  std::vector<int> leaf_of(n);
  for (int stage = 0; stage < params.n_stages; ++stage) {
    for (size_t i = 0; i < n; ++i) {
      if (loss == GbtLoss::kSquared) {
        grad[i] = margin[i] - y[i];
        hess[i] = 1.0;
      } else {
        const double p = Sigmoid(margin[i]);
        grad[i] = p - y[i];
        hess[i] = p * (1.0 - p);
      }
      neg_grad[i] = -grad[i];
    }
    Tree tree = FitCart(X, neg_grad, tp);

    std::vector<std::vector<size_t>> members(tree.nodes.size());
    for (size_t i = 0; i < n; ++i) {
      leaf_of[i] = tree.LeafIndex(X.row(i));
      members[leaf_of[i]].push_back(i);
    }
    for (size_t leaf = 0; leaf < tree.nodes.size(); ++leaf) {
      auto& node = tree.nodes[leaf];
      if (!node.is_leaf()) continue;
      double G = 0.0, H = 0.0, old_loss = 0.0;
      for (size_t i : members[leaf]) {
        G += grad[i];
        H += hess[i];
        old_loss += point[i];
      }
      double w = (H + params.lambda) > 0.0 ? -G / (H + params.lambda) : 0.0;
      for (int halvings = 0; halvings <= 60; ++halvings) {
        double new_loss = 0.0;
        for (size_t i : members[leaf]) {
          new_loss += PointLoss(loss, margin[i] + params.learning_rate * w, y[i]);
        }
        if (new_loss <= old_loss) break;
        w = halvings == 60 ? 0.0 : w * 0.5;
      }
      node.value = {w};
    }
    for (size_t i = 0; i < n; ++i) {
      margin[i] += params.learning_rate * tree.nodes[leaf_of[i]].value[0];
      point[i] = PointLoss(loss, margin[i], y[i]);
    }
    m.stages.push_back(std::move(tree));
    record_loss();
  }
  return m;
}

double GbtMargin(const GbtModel& m, std::span<const double> x,
                 std::optional<int> n_stages) {
  if (!m.fitted()) throw Error(ErrorCode::kUnfittedModel, "boosted model is not fitted");
  const int total = static_cast<int>(m.stages.size());
  const int cutoff = n_stages.value_or(total);
  if (cutoff < 0 || cutoff > total) {
    throw Error(ErrorCode::kOutOfRange, "stage cutoff exceeds the fitted stages");
  }
  // Same accumulation order as training, so fitted margins are reproduced.
  double margin = m.base_score;
  for (int k = 0; k < cutoff; ++k) {
    margin += m.params.learning_rate * m.stages[k].Value(x)[0];
  }
  return margin;
}

double GbtPredict(const GbtModel& m, std::span<const double> x,
                  std::optional<int> n_stages) {
  const double z = GbtMargin(m, x, n_stages);
  return m.loss == GbtLoss::kLogistic ? Sigmoid(z) : z;
}

}  // namespace pyro
