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


#ifndef PYRO_METRICS_H_
#define PYRO_METRICS_H_

#include <optional>
#include <span>

namespace pyro {

// Mean binary cross-entropy with probabilities clipped to [1e-15, 1 - 1e-15].
double LogLoss(std::span<const double> y, std::span<const double> p);

// Mann-Whitney AUC. Tied scores share their average rank.
double RocAuc(std::span<const double> y, std::span<const double> scores);

// Rates whose denominator is zero are left empty.
struct ConfusionStats {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
  std::optional<double> sensitivity;
  std::optional<double> fallout;
  std::optional<double> specificity;
  std::optional<double> precision;
  double accuracy = 0.0;
};

// A sample is predicted positive when p >= threshold.
ConfusionStats Confusion(std::span<const double> y, std::span<const double> p,
                         double threshold = 0.5);

double PearsonR(std::span<const double> actual, std::span<const double> predicted);

// 1 - SSE/SST. Not the square of PearsonR for biased predictors.
double RSquared(std::span<const double> actual, std::span<const double> predicted);

double Rmse(std::span<const double> actual, std::span<const double> predicted);

}  // namespace pyro

#endif  // PYRO_METRICS_H_
