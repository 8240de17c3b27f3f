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

#ifndef PYRO_GBT_H_
#define PYRO_GBT_H_

#include <optional>
#include <span>
#include <vector>

#include "pyro/matrix.h"
#include "pyro/tree.h"

namespace pyro {

enum class GbtLoss { kSquared, kLogistic };

struct GbtParams {
  int n_stages = 500;
  double learning_rate = 0.10;
  int max_depth = 10;
  double lambda = 1.0;
  int min_samples_split = 10;
};

// Additive model: margin = base_score + learning_rate * sum of stage leaf
// weights. Logistic models return sigmoid(margin).
struct GbtModel {
  GbtLoss loss = GbtLoss::kSquared;
  double base_score = 0.0;  // mean, or log-odds of the positive rate
  GbtParams params;
  std::vector<Tree> stages;  // leaf value[0] holds the weight w
  // Mean training loss before the first stage and after each stage: mean
  // squared error, or mean log loss.
  std::vector<double> training_loss;

  bool fitted() const { return !training_loss.empty(); }
};

// Stage k fits a regression tree to the negative gradients and sets each leaf
// to w = -G / (H + lambda). A leaf step that would raise that leaf's loss is
// halved until it does not, so the recorded loss never increases.
GbtModel FitGbt(const Matrix& X, std::span<const double> y,
                const GbtParams& params, GbtLoss loss);

double GbtMargin(const GbtModel& m, std::span<const double> x,
                 std::optional<int> n_stages = std::nullopt);
double GbtPredict(const GbtModel& m, std::span<const double> x,
                  std::optional<int> n_stages = std::nullopt);

double Sigmoid(double z);

}  // namespace pyro

#endif  // PYRO_GBT_H_
