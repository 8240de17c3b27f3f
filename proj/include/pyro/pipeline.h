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


#ifndef PYRO_PIPELINE_H_
#define PYRO_PIPELINE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pyro/bundle.h"
#include "pyro/dataset.h"
#include "pyro/ensemble.h"

namespace pyro {

struct TrainOptions {
  double split_fraction = 0.7;
  bool stratify = true;
  EnsembleConfig ensemble;  // ensemble.seed is the run seed
};

// Filters to the task, splits with the run seed, fits the ensemble on the
// train part and wraps it with its metadata.
ModelBundle TrainModel(const Dataset& ds, Task task, const TrainOptions& options);

// Records of `ds` that fell in the test part of the model's training split.
Dataset HeldOutRecords(const Dataset& ds, const ModelBundle& bundle);

// Metric name -> value per source ("ensemble", "forest", "gbt", "mlp").
// Undefined values (zero denominators, single-class AUC) are omitted.
struct EvaluationReport {
  Task task = Task::kFireResistance;
  size_t n = 0;
  std::map<std::string, std::map<std::string, double>> metrics;
  // Rating classes: rows actual, columns predicted.
  std::vector<std::vector<long>> rating_confusion;
};

EvaluationReport Evaluate(const EnsembleModel& model, const Dataset& ds);

}  // namespace pyro

#endif  // PYRO_PIPELINE_H_
