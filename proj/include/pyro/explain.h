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


#ifndef PYRO_EXPLAIN_H_
#define PYRO_EXPLAIN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pyro/dataset.h"
#include "pyro/ensemble.h"
#include "pyro/explanation.h"
#include "pyro/matrix.h"

namespace pyro {

using ModelFn = std::function<double(std::span<const double>)>;

inline constexpr size_t kMaxExactFeatures = 13;
inline constexpr size_t kDefaultBackgroundRows = 64;

// Interventional coalition value v(S): the mean over background rows of f at
// x with the features outside S taken from the background row. Bit b of a
// mask stands for features[b]. Index = mask, size 2^|features|.
std::vector<double> CoalitionValues(const ModelFn& f, std::span<const double> x,
                                    const Matrix& background,
                                    std::span<const size_t> features,
                                    Exec exec = Exec::kParallel);

// Exact Shapley values by enumerating all coalitions of `features` (column
// indices; empty means every column). Columns outside `features` stay at x.
Explanation ShapleyExact(const ModelFn& f, std::span<const double> x,
                         const Matrix& background,
                         const std::vector<std::string>& names,
                         std::span<const size_t> features = {},
                         Exec exec = Exec::kParallel);

// Permutation sampling: each sample pairs a random ordering with a random
// background row. Efficiency holds only in expectation.
Explanation ShapleyMonteCarlo(const ModelFn& f, std::span<const double> x,
                              const Matrix& background,
                              const std::vector<std::string>& names,
                              int n_samples, uint64_t seed);

// At most `cap` rows, drawn without replacement and kept in source order.
Matrix SampleBackground(const Matrix& data, size_t cap, uint64_t seed);

struct ImportanceReport {
  std::vector<std::string> features;
  std::vector<double> mean_abs;  // mean |phi| over the evaluation set
  std::vector<double> score;     // percent of the largest mean_abs
};

// Monte Carlo attribution is used when mc_samples is set.
ImportanceReport Importance(const ModelFn& f, const Matrix& eval_set,
                            const Matrix& background,
                            const std::vector<std::string>& names,
                            std::optional<int> mc_samples = std::nullopt,
                            uint64_t seed = 0, Exec exec = Exec::kParallel);

// Equal-frequency bin index per value. Tied values share a bin.
std::vector<int> EqualFrequencyBins(std::span<const double> values, int bins);

// I(X;Y) / sqrt(H(X) H(Y)) over discrete codes; 0 when either is constant.
double NormalizedMutualInformation(std::span<const int> x, std::span<const int> y);

struct LabeledMatrix {
  std::vector<std::string> names;
  Matrix values;
  std::vector<std::vector<std::string>> bands;  // correlation only
};

// Columns of `ds` for the task features plus the task target, over records
// that carry the target.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<bool> categorical;
  std::vector<std::vector<double>> columns;
};
FeatureTable TaskTable(const Dataset& ds, Task task);

LabeledMatrix AssociationMatrix(const FeatureTable& table, int bins = 10);
LabeledMatrix CorrelationMatrix(const FeatureTable& table);

// "strong" for |r| >= 0.5, "moderate" for |r| >= 0.3, else "weak".
std::string CorrelationBand(double r);

// Shapley explanation of the ensemble's scalar output on one record.
Explanation ExplainRecord(const EnsembleModel& ens, const ColumnRecord& rec,
                          const Matrix& background, Exec exec = Exec::kParallel);

}  // namespace pyro

#endif  // PYRO_EXPLAIN_H_
