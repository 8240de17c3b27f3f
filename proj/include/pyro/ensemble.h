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


#ifndef PYRO_ENSEMBLE_H_
#define PYRO_ENSEMBLE_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pyro/dataset.h"
#include "pyro/error.h"
#include "pyro/forest.h"
#include "pyro/gbt.h"
#include "pyro/mlp.h"
#include "pyro/rating.h"

namespace pyro {

enum class Policy { kMajorityVote, kSelectFittest, kMeanAverage };
enum class Member { kForest = 0, kGbt = 1, kMlp = 2 };
inline constexpr size_t kNumMembers = 3;

std::string_view PolicyName(Policy p);
std::optional<Policy> PolicyFromName(std::string_view name);
std::string_view MemberName(Member m);
Policy DefaultPolicy(Task task);
bool IsClassification(Task task);

// Record validation failure; keeps the individual violations.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& id, std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct MemberFitness {
  std::string metric;  // "log_loss" or "rmse"
  double train = 0.0;
  double validation = 0.0;
};

struct EnsembleConfig {
  ForestParams forest;
  GbtParams gbt;
  MlpParams mlp;
  std::optional<Policy> policy;  // default per task
  double validation_fraction = 0.15;
  uint64_t seed = 0;  // member seeds derive from this
  Exec exec = Exec::kParallel;
};

// Three members over one task. Spalling members are probabilistic
// classifiers; fire-resistance and rating-class members are regressors in
// minutes, rating classes come from binning their outputs.
struct EnsembleModel {
  Task task = Task::kFireResistance;
  Policy policy = Policy::kSelectFittest;
  ForestModel forest;
  GbtModel gbt;
  MlpModel mlp;
  std::array<MemberFitness, kNumMembers> fitness;
  std::optional<Member> chosen;  // SelectFittest only
  uint64_t seed = 0;
  // Tree-encoded training rows kept as the default explanation background.
  Matrix background;

  FeatureSchema schema() const { return FeatureSchema::ForTask(task); }
  bool fitted() const { return forest.fitted() && gbt.fitted() && mlp.fitted(); }
};

struct EnsemblePrediction {
  Task task = Task::kFireResistance;
  // Spall probability or fire resistance in minutes.
  double value = 0.0;
  // Spalling: 0/1. Rating class task: RatingClass index.
  std::optional<int> label;
  // Fire-resistance and rating-class tasks.
  std::optional<RatingClass> rating;
  std::array<double, kNumMembers> members{};
};

// The label held by at least two voters; the lowest label when all differ.
int VoteClassify(std::span<const int> labels);

// Trains on the train split minus a validation carve-out, records member
// fitness on the carve-out and picks the fittest member.
EnsembleModel FitEnsemble(const Dataset& ds, Task task, const EnsembleConfig& config);

// Member outputs on a tree-encoded vector, in member order.
std::array<double, kNumMembers> MemberOutputs(const EnsembleModel& ens,
                                              std::span<const double> x);
EnsemblePrediction PredictEncoded(const EnsembleModel& ens, std::span<const double> x);
// The scalar a prediction is explained by: spall probability or minutes.
double EnsembleValue(const EnsembleModel& ens, std::span<const double> x);

// Validates for prediction; throws ValidationError.
EnsemblePrediction Predict(const EnsembleModel& ens, const ColumnRecord& rec);
std::vector<EnsemblePrediction> PredictBatch(const EnsembleModel& ens,
                                             std::span<const ColumnRecord> records,
                                             Exec exec = Exec::kParallel);

}  // namespace pyro

#endif  // PYRO_ENSEMBLE_H_
