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

#include "pyro/pipeline.h"

#include "pyro/error.h"
#include "pyro/metrics.h"
#include "pyro/rating.h"

namespace pyro {
namespace {

Task TargetTask(Task task) {
  return task == Task::kSpalling ? Task::kSpalling : Task::kFireResistance;
}

void PutOptional(std::map<std::string, double>& out, const std::string& key,
                 const std::optional<double>& v) {
  if (v) out[key] = *v;
}

template <typename F>
void TryPut(std::map<std::string, double>& out, const std::string& key, F f) {
  try {
    out[key] = f();
  } catch (const Error&) {
  }
}

std::map<std::string, double> ScoreOutputs(Task task, const std::vector<double>& y,
                                           const std::vector<double>& p) {
  std::map<std::string, double> m;
  if (task == Task::kSpalling) {
    m["log_loss"] = LogLoss(y, p);
    TryPut(m, "auc", [&] { return RocAuc(y, p); });
    const auto c = Confusion(y, p);
    m["tp"] = static_cast<double>(c.tp);
    m["fp"] = static_cast<double>(c.fp);
    m["tn"] = static_cast<double>(c.tn);
    m["fn"] = static_cast<double>(c.fn);
    m["accuracy"] = c.accuracy;
    PutOptional(m, "sensitivity", c.sensitivity);
    PutOptional(m, "fallout", c.fallout);
    PutOptional(m, "specificity", c.specificity);
    PutOptional(m, "precision", c.precision);
    return m;
  }
  TryPut(m, "r", [&] { return PearsonR(y, p); });
  TryPut(m, "r2", [&] { return RSquared(y, p); });
  if (m.count("r")) m["r_squared_of_r"] = m["r"] * m["r"];
  m["rmse"] = Rmse(y, p);
  if (task == Task::kRatingClass) {
    size_t hits = 0;
    for (size_t i = 0; i < y.size(); ++i) {
      hits += ClassifyRating(y[i]) == ClassifyRating(std::max(0.0, p[i])) ? 1 : 0;
    }
    m["class_accuracy"] = static_cast<double>(hits) / static_cast<double>(y.size());
  }
  return m;
}

}  // namespace

ModelBundle TrainModel(const Dataset& ds, Task task, const TrainOptions& options) {
  const Dataset filtered = FilterForTask(ds, TargetTask(task));
  const uint64_t seed = options.ensemble.seed;
  const Dataset split =
      SplitTrainTest(filtered, options.split_fraction, seed,
                     options.stratify ? std::optional<Task>(TargetTask(task)) : std::nullopt);
  EnsembleModel model = FitEnsemble(split, task, options.ensemble);
  TrainingMetadata meta;
  meta.seed = seed;
  meta.split_fraction = options.split_fraction;
  meta.stratified = options.stratify;
  for (Provenance p : {Provenance::kReal, Provenance::kSynthetic, Provenance::kAugmented}) {
    meta.provenance_counts[std::string(ProvenanceName(p))] = filtered.CountProvenance(p);
  }
  return MakeBundle(std::move(model), std::move(meta));
}

Dataset HeldOutRecords(const Dataset& ds, const ModelBundle& bundle) {
  const Task target = TargetTask(bundle.model.task);
  const Dataset filtered = FilterForTask(ds, target);
  const auto& meta = bundle.metadata;
  const Dataset split =
      SplitTrainTest(filtered, meta.split_fraction, meta.seed,
                     meta.stratified ? std::optional<Task>(target) : std::nullopt);
  Dataset out;
  out.schema = split.schema;
  for (size_t i : split.Indices(SplitRole::kTest)) out.records.push_back(split.records[i]);
  return out;
}

EvaluationReport Evaluate(const EnsembleModel& model, const Dataset& ds) {
  const Task task = model.task;
  EvaluationReport report;
  report.task = task;
  std::vector<ColumnRecord> records;
  for (const auto& r : ds.records) {
    if (r.HasTarget(TargetTask(task))) records.push_back(r);
  }
  report.n = records.size();
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no records carry the task target");
  const auto preds = PredictBatch(model, records);
  std::vector<double> y;
  std::array<std::vector<double>, kNumMembers> members;
  std::vector<double> ensemble;
  for (size_t i = 0; i < records.size(); ++i) {
    y.push_back(task == Task::kSpalling ? (*records[i].spalled ? 1.0 : 0.0)
                                        : *records[i].fire_resistance_min);
    ensemble.push_back(preds[i].value);
    for (size_t m = 0; m < kNumMembers; ++m) members[m].push_back(preds[i].members[m]);
  }
  report.metrics["ensemble"] = ScoreOutputs(task, y, ensemble);
  for (size_t m = 0; m < kNumMembers; ++m) {
    report.metrics[std::string(MemberName(static_cast<Member>(m)))] =
        ScoreOutputs(task, y, members[m]);
  }
  if (task == Task::kSpalling) {
    // The voted label may differ from thresholding the mean probability.
    std::vector<double> voted;
    for (const auto& p : preds) voted.push_back(static_cast<double>(*p.label));
    const auto c = Confusion(y, voted);
    auto& e = report.metrics["ensemble"];
    e["tp"] = static_cast<double>(c.tp);
    e["fp"] = static_cast<double>(c.fp);
    e["tn"] = static_cast<double>(c.tn);
    e["fn"] = static_cast<double>(c.fn);
    e["accuracy"] = c.accuracy;
    e.erase("sensitivity");
    e.erase("fallout");
    e.erase("specificity");
    e.erase("precision");
    PutOptional(e, "sensitivity", c.sensitivity);
    PutOptional(e, "fallout", c.fallout);
    PutOptional(e, "specificity", c.specificity);
    PutOptional(e, "precision", c.precision);
  } else {
    report.rating_confusion.assign(kNumRatingClasses, std::vector<long>(kNumRatingClasses, 0));
    size_t hits = 0;
    for (size_t i = 0; i < y.size(); ++i) {
      const int actual = static_cast<int>(ClassifyRating(y[i]));
      const int predicted = static_cast<int>(*preds[i].rating);
      ++report.rating_confusion[actual][predicted];
      hits += actual == predicted ? 1 : 0;
    }
    report.metrics["ensemble"]["class_accuracy"] =
        static_cast<double>(hits) / static_cast<double>(y.size());
  }
  return report;
}

}  // namespace pyro
