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

#include "pyro/ensemble.h"

#include <algorithm>
#include <exception>
#include <numeric>

#include "pyro/explain.h"
#include "pyro/metrics.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

constexpr std::array<std::string_view, kNumMembers> kMemberNames = {"forest", "gbt",
                                                                    "mlp"};

std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (v.severity != Severity::kError) continue;
    if (!out.empty()) out += "; ";
    out += v.field + ": " + v.message;
  }
  return out;
}

std::array<double, kNumMembers> Fitness(Task task, const Matrix& X, const Matrix& Xn,
                                        std::span<const double> y,
                                        const EnsembleModel& ens) {
  std::array<std::vector<double>, kNumMembers> preds;
  for (size_t i = 0; i < X.rows(); ++i) {
    preds[0].push_back(ForestScore(ens.forest, X.row(i)));
    preds[1].push_back(GbtPredict(ens.gbt, X.row(i)));
    preds[2].push_back(Forward(ens.mlp, Xn.row(i)));
  }
  std::array<double, kNumMembers> out{};
  for (size_t m = 0; m < kNumMembers; ++m) {
    out[m] = task == Task::kSpalling ? LogLoss(y, preds[m]) : Rmse(y, preds[m]);
  }
  return out;
}

}  // namespace

std::string_view PolicyName(Policy p) {
  switch (p) {
    case Policy::kMajorityVote: return "majority_vote";
    case Policy::kSelectFittest: return "select_fittest";
    case Policy::kMeanAverage: return "mean_average";
  }
  return "unknown";
}

std::optional<Policy> PolicyFromName(std::string_view name) {
  for (Policy p : {Policy::kMajorityVote, Policy::kSelectFittest, Policy::kMeanAverage}) {
    if (PolicyName(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view MemberName(Member m) { return kMemberNames[static_cast<size_t>(m)]; }

Policy DefaultPolicy(Task task) {
  return task == Task::kFireResistance ? Policy::kSelectFittest : Policy::kMajorityVote;
}

bool IsClassification(Task task) { return task != Task::kFireResistance; }

ValidationError::ValidationError(const std::string& id, std::vector<Violation> violations)
    : Error(ErrorCode::kValidationFailed,
            "record '" + id + "' failed validation: " + JoinViolations(violations)),
      violations_(std::move(violations)) {}

int VoteClassify(std::span<const int> labels) {
  if (labels.empty()) throw Error(ErrorCode::kEmptyInput, "no votes");
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  int best = sorted[0];
  size_t best_count = 0;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    // Strictly greater keeps the lowest label among equal counts.
    if (j - i > best_count) {
      best_count = j - i;
      best = sorted[i];
    }
    i = j;
  }
  return best;
}

EnsembleModel FitEnsemble(const Dataset& ds, Task task, const EnsembleConfig& config) {
  if (!ds.has_split()) {
    throw Error(ErrorCode::kMissingSplit, "dataset has no train/test split");
  }
  const Policy policy = config.policy.value_or(DefaultPolicy(task));
  if (policy == Policy::kMajorityVote && !IsClassification(task)) {
    throw Error(ErrorCode::kInvalidArgument,
                "majority vote needs a classification task");
  }
  const Task target_task = task == Task::kSpalling ? Task::kSpalling : Task::kFireResistance;

  Dataset train;
  train.schema = FeatureSchema::ForTask(task);
  for (size_t i : ds.Indices(SplitRole::kTrain)) {
    const auto& rec = ds.records[i];
    if (!rec.HasTarget(target_task)) {
      throw Error(ErrorCode::kMissingTarget,
                  "training record '" + rec.id + "' lacks the " +
                      std::string(TaskName(task)) + " target");
    }
    train.records.push_back(rec);
  }
  if (train.records.size() < 10) {
    throw Error(ErrorCode::kInsufficientData, "need at least 10 training records");
  }
  const Dataset carved = SplitTrainTest(train, 1.0 - config.validation_fraction,
                                        DeriveSeed(config.seed, 0), target_task);
  const auto fit_rows = carved.Indices(SplitRole::kTrain);
  const auto valid_rows = carved.Indices(SplitRole::kTest);
  if (fit_rows.empty() || valid_rows.empty()) {
    throw Error(ErrorCode::kInsufficientData, "validation carve-out left a part empty");
  }

  const Matrix X = TreeMatrix(carved, task, fit_rows);
  const auto y = Targets(carved, task, fit_rows);
  const Matrix Xv = TreeMatrix(carved, task, valid_rows);
  const auto yv = Targets(carved, task, valid_rows);
  const NeuralEncoder encoder(train.schema);
  const Matrix Xn = encoder.EncodeMatrix(X);
  const Matrix Xvn = encoder.EncodeMatrix(Xv);

  EnsembleModel ens;
  ens.task = task;
  ens.policy = policy;
  ens.seed = config.seed;
  const bool classify = task == Task::kSpalling;

  ForestParams fp = config.forest;
  fp.seed = DeriveSeed(config.seed, 1);
  ens.forest = FitForest(X, y, classify ? TaskType::kClassification : TaskType::kRegression,
                         fp, config.exec);
  for (Feature f : train.schema.task_features()) {
    ens.forest.feature_names.emplace_back(FeatureName(f));
  }
  ens.gbt = FitGbt(X, y, config.gbt, classify ? GbtLoss::kLogistic : GbtLoss::kSquared);
  MlpParams mp = config.mlp;
  mp.seed = DeriveSeed(config.seed, 3);
  mp.loss = classify ? MlpLoss::kLogistic : MlpLoss::kSquared;
  ens.mlp = FitMlp(Xn, y, mp, &Xvn, yv, config.exec);

  const auto train_fit = Fitness(task, X, Xn, y, ens);
  const auto valid_fit = Fitness(task, Xv, Xvn, yv, ens);
  size_t best = 0;
  for (size_t m = 0; m < kNumMembers; ++m) {
    ens.fitness[m] = {classify ? "log_loss" : "rmse", train_fit[m], valid_fit[m]};
    if (valid_fit[m] < valid_fit[best]) best = m;
  }
  if (policy == Policy::kSelectFittest) ens.chosen = static_cast<Member>(best);
  ens.background = SampleBackground(X, kDefaultBackgroundRows, DeriveSeed(config.seed, 4));
  return ens;
}

namespace {

const NeuralEncoder& EncoderFor(Task task) {
  static const std::array<NeuralEncoder, 3> encoders = {
      NeuralEncoder(FeatureSchema::ForTask(Task::kSpalling)),
      NeuralEncoder(FeatureSchema::ForTask(Task::kFireResistance)),
      NeuralEncoder(FeatureSchema::ForTask(Task::kRatingClass))};
  return encoders[static_cast<size_t>(task)];
}

double MemberOutput(const EnsembleModel& ens, Member m, std::span<const double> x) {
  switch (m) {
    case Member::kForest: return ForestScore(ens.forest, x);
    case Member::kGbt: return GbtPredict(ens.gbt, x);
    case Member::kMlp: break;
  }
  const auto& encoder = EncoderFor(ens.task);
  if (x.size() != encoder.input_width()) {
    throw Error(ErrorCode::kDimensionMismatch, "encoded record width mismatch");
  }
  return Forward(ens.mlp, encoder.Encode(x));
}

}  // namespace

std::array<double, kNumMembers> MemberOutputs(const EnsembleModel& ens,
                                              std::span<const double> x) {
  if (!ens.fitted()) throw Error(ErrorCode::kUnfittedModel, "ensemble is not fitted");
  return {MemberOutput(ens, Member::kForest, x), MemberOutput(ens, Member::kGbt, x),
          MemberOutput(ens, Member::kMlp, x)};
}

namespace {

double Combine(const EnsembleModel& ens, const std::array<double, kNumMembers>& out) {
  if (ens.policy == Policy::kSelectFittest && ens.chosen) {
    return out[static_cast<size_t>(*ens.chosen)];
  }
  return (out[0] + out[1] + out[2]) / 3.0;
}

}  // namespace

EnsemblePrediction PredictEncoded(const EnsembleModel& ens, std::span<const double> x) {
  EnsemblePrediction p;
  p.task = ens.task;
  p.members = MemberOutputs(ens, x);
  p.value = Combine(ens, p.members);
  if (ens.task == Task::kSpalling) {
    if (ens.policy == Policy::kMajorityVote) {
      std::array<int, kNumMembers> labels{};
      for (size_t m = 0; m < kNumMembers; ++m) labels[m] = p.members[m] >= 0.5 ? 1 : 0;
      p.label = VoteClassify(labels);
    } else {
      p.label = p.value >= 0.5 ? 1 : 0;
    }
    return p;
  }
  // Regressors can undershoot zero minutes; ratings bin the clamped value.
  if (ens.task == Task::kRatingClass && ens.policy == Policy::kMajorityVote) {
    std::array<int, kNumMembers> labels{};
    for (size_t m = 0; m < kNumMembers; ++m) {
      labels[m] = static_cast<int>(ClassifyRating(std::max(0.0, p.members[m])));
    }
    p.label = VoteClassify(labels);
    p.rating = static_cast<RatingClass>(*p.label);
  } else {
    p.rating = ClassifyRating(std::max(0.0, p.value));
    if (ens.task == Task::kRatingClass) p.label = static_cast<int>(*p.rating);
  }
  return p;
}

double EnsembleValue(const EnsembleModel& ens, std::span<const double> x) {
  if (ens.policy == Policy::kSelectFittest && ens.chosen) {
    if (!ens.fitted()) throw Error(ErrorCode::kUnfittedModel, "ensemble is not fitted");
    return MemberOutput(ens, *ens.chosen, x);
  }
  return Combine(ens, MemberOutputs(ens, x));
}

EnsemblePrediction Predict(const EnsembleModel& ens, const ColumnRecord& rec) {
  auto violations = ValidateRecord(rec, ens.schema(), false, Purpose::kPrediction);
  if (HasErrors(violations)) throw ValidationError(rec.id, std::move(violations));
  return PredictEncoded(ens, EncodeTree(rec, ens.task));
}

std::vector<EnsemblePrediction> PredictBatch(const EnsembleModel& ens,
                                             std::span<const ColumnRecord> records,
                                             Exec exec) {
  if (!ens.fitted()) throw Error(ErrorCode::kUnfittedModel, "ensemble is not fitted");
  const FeatureSchema schema = ens.schema();
  Matrix X(records.size(), schema.task_features().size());
  for (size_t i = 0; i < records.size(); ++i) {
    auto violations = ValidateRecord(records[i], schema, false, Purpose::kPrediction);
    if (HasErrors(violations)) throw ValidationError(records[i].id, std::move(violations));
    const auto x = EncodeTree(records[i], ens.task);
    std::copy(x.begin(), x.end(), X.row(i).begin());
  }
  std::vector<EnsemblePrediction> out(records.size());
  const int n = static_cast<int>(records.size());
  if (exec == Exec::kParallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) {
      try {
        out[i] = PredictEncoded(ens, X.row(i));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int i = 0; i < n; ++i) out[i] = PredictEncoded(ens, X.row(i));
  }
  return out;
}

}  // namespace pyro
