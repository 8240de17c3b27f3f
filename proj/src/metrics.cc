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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pyro/error.h"

namespace pyro {
namespace {

void CheckLengths(size_t a, size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                "lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
  if (a == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
}

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double SumSquaredDeviation(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s;
}

std::optional<double> Ratio(long num, long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double LogLoss(std::span<const double> y, std::span<const double> p) {
  CheckLengths(y.size(), p.size());
  constexpr double kEps = 1e-15;
  double total = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const double q = std::clamp(p[i], kEps, 1.0 - kEps);
    total -= y[i] * std::log(q) + (1.0 - y[i]) * std::log(1.0 - q);
  }
  return total / static_cast<double>(y.size());
}

double RocAuc(std::span<const double> y, std::span<const double> scores) {
  CheckLengths(y.size(), scores.size());
  const size_t n = y.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  std::vector<double> rank(n);
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double n_pos = 0.0;
  double rank_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (y[i] == 1.0) {
      n_pos += 1.0;
      rank_sum += rank[i];
    }
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) {
    throw Error(ErrorCode::kSingleClass, "AUC needs both classes present");
  }
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

ConfusionStats Confusion(std::span<const double> y, std::span<const double> p,
                         double threshold) {
  CheckLengths(y.size(), p.size());
  ConfusionStats s;
  for (size_t i = 0; i < y.size(); ++i) {
    const bool predicted = p[i] >= threshold;
    const bool actual = y[i] == 1.0;
    if (predicted && actual) ++s.tp;
    else if (predicted) ++s.fp;
    else if (actual) ++s.fn;
    else ++s.tn;
  }
  s.sensitivity = Ratio(s.tp, s.tp + s.fn);
  s.fallout = Ratio(s.fp, s.fp + s.tn);
  if (s.fallout) s.specificity = 1.0 - *s.fallout;
  s.precision = Ratio(s.tp, s.tp + s.fp);
  s.accuracy = static_cast<double>(s.tp + s.tn) / static_cast<double>(y.size());
  return s;
}

double PearsonR(std::span<const double> actual, std::span<const double> predicted) {
  CheckLengths(actual.size(), predicted.size());
  const double ma = Mean(actual);
  const double mp = Mean(predicted);
  const double saa = SumSquaredDeviation(actual, ma);
  const double spp = SumSquaredDeviation(predicted, mp);
  if (saa == 0.0 || spp == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "correlation needs variance in both inputs");
  }
  double sap = 0.0;
  for (size_t i = 0; i < actual.size(); ++i) {
    sap += (actual[i] - ma) * (predicted[i] - mp);
  }
  return sap / std::sqrt(saa * spp);
}

double RSquared(std::span<const double> actual, std::span<const double> predicted) {
  CheckLengths(actual.size(), predicted.size());
  const double sst = SumSquaredDeviation(actual, Mean(actual));
  if (sst == 0.0) throw Error(ErrorCode::kZeroVariance, "actual values are constant");
  double sse = 0.0;
  for (size_t i = 0; i < actual.size(); ++i) {
    sse += (predicted[i] - actual[i]) * (predicted[i] - actual[i]);
  }
  return 1.0 - sse / sst;
}

double Rmse(std::span<const double> actual, std::span<const double> predicted) {
  CheckLengths(actual.size(), predicted.size());
  double sse = 0.0;
  for (size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i] - predicted[i];
    sse += e * e;
  }
  return std::sqrt(sse / static_cast<double>(actual.size()));
}

}  // namespace pyro
