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

// Command-line front end. Every verb prints machine-readable output; errors
// go to stderr as one JSON object with a nonzero exit status.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pyro/augment.h"
#include "pyro/benchmark_data.h"
#include "pyro/bundle.h"
#include "pyro/codal.h"
#include "pyro/dataset.h"
#include "pyro/error.h"
#include "pyro/explain.h"
#include "pyro/pipeline.h"
#include "pyro/service.h"

namespace {

using nlohmann::json;
using pyro::Error;
using pyro::ErrorCode;

pyro::Task ParseTask(const std::string& name) {
  const auto t = pyro::TaskFromName(name);
  if (!t) throw Error(ErrorCode::kInvalidArgument, "unknown task '" + name + "'");
  return *t;
}

// Writes to `path`, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::kIo, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void PrintWarnings(const pyro::Dataset& ds) {
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << "\n";
}

std::string Num(double v) { return pyro::FormatDouble(v); }

// --- verbs -------------------------------------------------------------------

struct IngestArgs {
  std::string data, task = "fire_resistance", out;
  bool strict = false, by_provenance = false;
};

void RunIngest(const IngestArgs& a) {
  const auto task = ParseTask(a.task);
  const auto ds = pyro::LoadCsv(a.data, pyro::FeatureSchema::ForTask(task),
                                {a.strict, pyro::Purpose::kTraining});
  PrintWarnings(ds);
  const auto rows = pyro::Summarize(pyro::FilterForTask(ds, task), a.by_provenance);
  Output out(a.out);
  auto& os = out.stream();
  os << "feature,group,n,min,max,mean,std,skewness,skewness_defined\n";
  for (const auto& r : rows) {
    os << r.feature << "," << r.group << "," << r.n << "," << Num(r.min) << "," << Num(r.max)
       << "," << Num(r.mean) << "," << Num(r.std) << "," << Num(r.skewness) << ","
       << (r.skewness_defined ? 1 : 0) << "\n";
  }
  std::cerr << json({{"records", ds.records.size()},
                     {"real", ds.CountProvenance(pyro::Provenance::kReal)},
                     {"synthetic", ds.CountProvenance(pyro::Provenance::kSynthetic)},
                     {"augmented", ds.CountProvenance(pyro::Provenance::kAugmented)},
                     {"warnings", ds.warnings.size()}})
                   .dump()
            << "\n";
}

struct AugmentArgs {
  std::string data, task = "spalling", method = "pair", out, ingest;
  size_t count = 0;
  uint64_t seed = 0;
  bool allow_fr = false;
};

void RunAugment(const AugmentArgs& a) {
  const auto task = ParseTask(a.task);
  auto ds = pyro::LoadCsv(a.data, pyro::FeatureSchema::ForTask(task));
  PrintWarnings(ds);
  json summary = {{"input_records", ds.records.size()}};
  if (!a.ingest.empty()) {
    ds = pyro::IngestAugmented(ds, a.ingest);
    summary["after_ingest"] = ds.records.size();
  }
  if (a.count > 0) {
    const auto plan = pyro::BuildPairs(ds, a.count, a.seed, task);
    const pyro::SynthesisOptions options{a.allow_fr};
    pyro::SynthesisResult result;
    if (a.method == "pair") result = pyro::PairSynthesize(ds, plan, options);
    else if (a.method == "smote") result = pyro::SmoteSynthesize(ds, plan, a.seed, options);
    else throw Error(ErrorCode::kInvalidArgument, "method must be pair or smote");
    for (const auto& n : result.notes) std::cerr << "note: " << n << "\n";
    summary["synthetic"] = result.records.size();
    for (auto& r : result.records) ds.records.push_back(std::move(r));
  }
  Output out(a.out);
  pyro::WriteCsv(ds.records, out.stream());
  summary["output_records"] = ds.records.size();
  std::cerr << summary.dump() << "\n";
}

struct TrainArgs {
  std::string data, task = "spalling", out, policy;
  uint64_t seed = 0;
  double split = 0.7, validation = 0.15;
  bool no_stratify = false;
  int forest_trees = 200, forest_leaves = 50;
  int gbt_stages = 500, gbt_depth = 10;
  double gbt_lr = 0.1, gbt_lambda = 1.0;
  std::vector<size_t> mlp_hidden = {64};
  int mlp_epochs = 500, mlp_batch = 32, mlp_patience = 50;
  double mlp_lr = 0.03;
  std::string exec = "parallel";
};

pyro::Exec ParseExec(const std::string& s) {
  if (s == "serial") return pyro::Exec::kSerial;
  if (s == "parallel") return pyro::Exec::kParallel;
  throw Error(ErrorCode::kInvalidArgument, "exec must be serial or parallel");
}

void RunTrain(const TrainArgs& a) {
  const auto task = ParseTask(a.task);
  const auto ds = pyro::LoadCsv(a.data, pyro::FeatureSchema::ForTask(task));
  PrintWarnings(ds);
  pyro::TrainOptions o;
  o.split_fraction = a.split;
  o.stratify = !a.no_stratify;
  auto& e = o.ensemble;
  e.seed = a.seed;
  e.validation_fraction = a.validation;
  e.exec = ParseExec(a.exec);
  if (!a.policy.empty()) {
    e.policy = pyro::PolicyFromName(a.policy);
    if (!e.policy) throw Error(ErrorCode::kInvalidArgument, "unknown policy '" + a.policy + "'");
  }
  e.forest.n_trees = a.forest_trees;
  e.forest.max_leaf_nodes = a.forest_leaves;
  e.gbt.n_stages = a.gbt_stages;
  e.gbt.max_depth = a.gbt_depth;
  e.gbt.learning_rate = a.gbt_lr;
  e.gbt.lambda = a.gbt_lambda;
  e.mlp.hidden = a.mlp_hidden;
  e.mlp.epochs = a.mlp_epochs;
  e.mlp.batch_size = a.mlp_batch;
  e.mlp.patience = a.mlp_patience;
  e.mlp.learning_rate = a.mlp_lr;
  const auto bundle = pyro::TrainModel(ds, task, o);
  pyro::SaveBundle(bundle, a.out);
  json fitness = json::array();
  for (size_t m = 0; m < pyro::kNumMembers; ++m) {
    const auto& f = bundle.model.fitness[m];
    fitness.push_back({{"member", pyro::MemberName(static_cast<pyro::Member>(m))},
                       {"metric", f.metric},
                       {"train", f.train},
                       {"validation", f.validation}});
  }
  std::cout << json({{"model", a.out},
                     {"task", a.task},
                     {"policy", pyro::PolicyName(bundle.model.policy)},
                     {"chosen", bundle.model.chosen
                                    ? json(pyro::MemberName(*bundle.model.chosen))
                                    : json(nullptr)},
                     {"fitness", fitness},
                     {"fingerprint", bundle.fingerprint}})
                   .dump(2)
            << "\n";
}

struct EvaluateArgs {
  std::string model, data, out;
  bool all = false;
};

void RunEvaluate(const EvaluateArgs& a) {
  const auto bundle = pyro::LoadBundle(a.model);
  const auto schema = bundle.model.schema();
  const auto ds = pyro::LoadCsv(a.data, schema);
  const auto eval_set = a.all ? ds : pyro::HeldOutRecords(ds, bundle);
  const auto report = pyro::Evaluate(bundle.model, eval_set);
  json j = {{"task", pyro::TaskName(report.task)},
            {"records", a.all ? "all" : "held-out test split"},
            {"n", report.n},
            {"metrics", report.metrics},
            {"r2_definition", "1 - SSE/SST; r_squared_of_r is the squared correlation"}};
  if (!report.rating_confusion.empty()) j["rating_confusion"] = report.rating_confusion;
  Output out(a.out);
  out.stream() << j.dump(2) << "\n";
}

struct PredictArgs {
  std::string model, data, out;
};

void RunPredict(const PredictArgs& a) {
  const auto bundle = pyro::LoadBundle(a.model);
  const auto ds = pyro::LoadCsv(a.data, bundle.model.schema(), {false, pyro::Purpose::kPrediction});
  const auto preds = pyro::PredictBatch(bundle.model, ds.records);
  Output out(a.out);
  auto& os = out.stream();
  os << "id,task,value,label,rating_class,forest,gbt,mlp\n";
  for (size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    os << ds.records[i].id << "," << pyro::TaskName(p.task) << "," << Num(p.value) << ","
       << (p.label ? std::to_string(*p.label) : "") << ","
       << (p.rating ? std::string(pyro::RatingClassName(*p.rating)) : "");
    for (double m : p.members) os << "," << Num(m);
    os << "\n";
  }
}

struct ExplainArgs {
  std::string model, data, out, importance_out, association_out, correlation_out, task;
  int mc_samples = 0;
  int bins = 10;
  uint64_t seed = 0;
};

void WriteMatrix(const pyro::LabeledMatrix& m, const std::string& path, bool with_bands) {
  Output out(path);
  auto& os = out.stream();
  os << "feature";
  for (const auto& n : m.names) os << "," << n;
  os << "\n";
  for (size_t r = 0; r < m.names.size(); ++r) {
    os << m.names[r];
    for (size_t c = 0; c < m.names.size(); ++c) {
      os << "," << Num(m.values(r, c));
      if (with_bands) os << " (" << m.bands[r][c] << ")";
    }
    os << "\n";
  }
}

void RunExplain(const ExplainArgs& a) {
  std::optional<pyro::ModelBundle> bundle;
  if (!a.model.empty()) bundle = pyro::LoadBundle(a.model);
  const pyro::Task task = bundle ? bundle->model.task
                                 : ParseTask(a.task.empty() ? "fire_resistance" : a.task);
  if (!a.association_out.empty() || !a.correlation_out.empty()) {
    const auto ds = pyro::LoadCsv(a.data, pyro::FeatureSchema::ForTask(task));
    const auto table = pyro::TaskTable(ds, task);
    if (!a.association_out.empty()) {
      std::cerr << "association: normalized mutual information, " << a.bins
                << " equal-frequency bins for continuous features\n";
      WriteMatrix(pyro::AssociationMatrix(table, a.bins), a.association_out, false);
    }
    if (!a.correlation_out.empty()) {
      WriteMatrix(pyro::CorrelationMatrix(table), a.correlation_out, true);
    }
  }
  if (!bundle) {
    if (a.association_out.empty() && a.correlation_out.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "explain needs --model or a matrix output");
    }
    return;
  }
  const auto& model = bundle->model;
  const auto ds = pyro::LoadCsv(a.data, model.schema(), {false, pyro::Purpose::kPrediction});
  std::vector<std::string> names;
  for (auto f : pyro::TaskFeatures(task)) names.emplace_back(pyro::FeatureName(f));
  const pyro::ModelFn f = [&model](std::span<const double> x) {
    return pyro::EnsembleValue(model, x);
  };
  pyro::Matrix X(ds.records.size(), names.size());
  for (size_t i = 0; i < ds.records.size(); ++i) {
    const auto x = pyro::EncodeTree(ds.records[i], task);
    std::copy(x.begin(), x.end(), X.row(i).begin());
  }
  Output out(a.out);
  auto& os = out.stream();
  os << "id,baseline,prediction";
  for (const auto& n : names) os << ",phi_" << n;
  for (const auto& n : names) os << ",value_" << n;
  os << "\n";
  for (size_t i = 0; i < X.rows(); ++i) {
    const auto e = a.mc_samples > 0
                       ? pyro::ShapleyMonteCarlo(f, X.row(i), model.background, names,
                                                 a.mc_samples, pyro::DeriveSeed(a.seed, i))
                       : pyro::ShapleyExact(f, X.row(i), model.background, names);
    os << ds.records[i].id << "," << Num(e.baseline) << "," << Num(e.prediction);
    for (double c : e.contributions) os << "," << Num(c);
    for (double v : X.row(i)) os << "," << Num(v);
    os << "\n";
  }
  if (!a.importance_out.empty() && X.rows() > 0) {
    const auto report = pyro::Importance(
        f, X, model.background, names,
        a.mc_samples > 0 ? std::optional<int>(a.mc_samples) : std::nullopt, a.seed);
    Output imp(a.importance_out);
    imp.stream() << "feature,mean_abs_shap,score_pct\n";
    for (size_t i = 0; i < report.features.size(); ++i) {
      imp.stream() << report.features[i] << "," << Num(report.mean_abs[i]) << ","
                   << Num(report.score[i]) << "\n";
    }
  }
}

struct CodalArgs {
  std::string data, method = "EC2", model, profile = "literal", out;
  double mu_fi = 0.5;
  bool mu_given = false, skip = false;
};

void RunCodal(const CodalArgs& a) {
  const auto method = pyro::CodalMethodFromName(a.method);
  if (!method) throw Error(ErrorCode::kInvalidArgument, "method must be EC2, AS3600 or Ensemble");
  const auto ds = pyro::FilterForTask(
      pyro::LoadCsv(a.data, pyro::FeatureSchema::ForTask(pyro::Task::kFireResistance)),
      pyro::Task::kFireResistance);
  pyro::CodalMapping mapping;
  mapping.mu_fi = a.mu_fi;
  mapping.mu_fi_defaulted = !a.mu_given;
  mapping.skip_unmappable = a.skip;
  pyro::As3600Profile profile;
  if (a.profile == "corrected") profile = pyro::As3600Profile::Corrected();
  else if (a.profile != "literal") throw Error(ErrorCode::kInvalidArgument, "profile must be literal or corrected");
  std::optional<pyro::ModelBundle> bundle;
  if (*method == pyro::CodalMethod::kEnsemble) {
    if (a.model.empty()) throw Error(ErrorCode::kInvalidArgument, "ensemble comparison needs --model");
    bundle = pyro::LoadBundle(a.model);
  }
  const auto report = pyro::CodalCompare(ds, *method, mapping, profile,
                                         bundle ? &bundle->model : nullptr);
  const std::string name(pyro::CodalMethodName(*method));
  Output out(a.out);
  out.stream() << "id,observed_FR,predicted_FR,method,residual\n";
  for (const auto& r : report.rows) {
    out.stream() << r.id << "," << Num(r.observed) << "," << Num(r.predicted) << "," << name
                 << "," << Num(r.residual) << "\n";
  }
  std::cout << json({{"method", name},
                     {"R", report.r ? json(*report.r) : json(nullptr)},
                     {"R2", report.r2 ? json(*report.r2) : json(nullptr)},
                     {"n", report.rows.size()},
                     {"profile", report.profile},
                     {"skipped", report.skipped.size()},
                     {"notes", report.notes}})
                   .dump()
            << "\n";
}

struct GenArgs {
  size_t n = 1000;
  uint64_t seed = 0;
  std::string out;
};

void RunGen(const GenArgs& a) {
  pyro::BenchmarkSpec spec;
  spec.n = a.n;
  spec.seed = a.seed;
  const auto ds = pyro::GenerateBenchmark(spec);
  Output out(a.out);
  pyro::WriteCsv(ds.records, out.stream());
}

struct ThroughputArgs {
  std::string model, data, exec = "parallel";
  size_t n = 5000;
  uint64_t seed = 1;
};

void RunThroughput(const ThroughputArgs& a) {
  const auto bundle = pyro::LoadBundle(a.model);
  std::vector<pyro::ColumnRecord> records;
  if (!a.data.empty()) {
    records = pyro::LoadCsv(a.data, bundle.model.schema(), {false, pyro::Purpose::kPrediction}).records;
  } else {
    pyro::BenchmarkSpec spec;
    spec.n = std::max(a.n, pyro::kMinBenchmarkRecords);
    spec.seed = a.seed;
    records = pyro::GenerateBenchmark(spec).records;
    records.resize(a.n);
  }
  const auto start = std::chrono::steady_clock::now();
  const auto preds = pyro::PredictBatch(bundle.model, records, ParseExec(a.exec));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double rate = seconds > 0.0 ? static_cast<double>(preds.size()) / seconds : 0.0;
  const double floor = bundle.model.task == pyro::Task::kSpalling ? 350.0 : 85.0;
  std::cout << json({{"task", pyro::TaskName(bundle.model.task)},
                     {"n", preds.size()},
                     {"seconds", seconds},
                     {"records_per_second", rate},
                     {"rate_floor", floor},
                     {"under_60s", seconds < 60.0},
                     {"meets_rate_floor", rate >= floor}})
                   .dump()
            << "\n";
}

struct ServeArgs {
  std::vector<std::string> models;
  std::string host = "127.0.0.1";
  int port = 8080;
  size_t max_batch = 10000;
};

void RunServe(const ServeArgs& a) {
  std::vector<pyro::ModelBundle> bundles;
  for (const auto& path : a.models) bundles.push_back(pyro::LoadBundle(path));
  pyro::ServiceConfig config;
  config.host = a.host;
  config.port = a.port;
  config.max_batch = a.max_batch;
  const pyro::Service service(std::move(bundles), config);
  pyro::RunServer(service);
}

void ReportError(const std::string& verb, const std::string& code, const std::string& message,
                 const pyro::DataError* data = nullptr) {
  json j = {{"error", code}, {"verb", verb}, {"message", message}};
  if (data) {
    j["row"] = data->row();
    j["column"] = data->column();
  }
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fire resistance and spalling prediction for RC columns"};
  app.set_config("--config", "", "INI/TOML file with option defaults, sections per verb");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a dataset and print its statistics");
  c_ingest->add_option("--data", ingest.data, "Dataset CSV")->required();
  c_ingest->add_option("--task", ingest.task, "spalling | fire_resistance");
  c_ingest->add_flag("--strict", ingest.strict, "Warn on values outside plausible ranges");
  c_ingest->add_flag("--group-by-provenance", ingest.by_provenance);
  c_ingest->add_option("--out", ingest.out, "Statistics CSV (default stdout)");

  AugmentArgs augment;
  auto* c_augment = app.add_subcommand("augment", "Add synthetic and augmented observations");
  c_augment->add_option("--data", augment.data)->required();
  c_augment->add_option("--task", augment.task);
  c_augment->add_option("--count", augment.count, "Synthetic records to generate");
  c_augment->add_option("--method", augment.method, "pair | smote");
  c_augment->add_option("--ingest", augment.ingest, "Augmented-observation CSV to append");
  c_augment->add_option("--seed", augment.seed);
  c_augment->add_flag("--allow-fire-resistance", augment.allow_fr);
  c_augment->add_option("--out", augment.out, "Output CSV (default stdout)");

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Train an ensemble and save it as JSON");
  c_train->add_option("--data", train.data)->required();
  c_train->add_option("--task", train.task, "spalling | fire_resistance | rating_class");
  c_train->add_option("--out", train.out)->required();
  c_train->add_option("--seed", train.seed);
  c_train->add_option("--split", train.split, "Train fraction");
  c_train->add_flag("--no-stratify", train.no_stratify);
  c_train->add_option("--validation", train.validation, "Validation carve-out of train");
  c_train->add_option("--policy", train.policy, "majority_vote | select_fittest | mean_average");
  c_train->add_option("--forest-trees", train.forest_trees);
  c_train->add_option("--forest-leaves", train.forest_leaves);
  c_train->add_option("--gbt-stages", train.gbt_stages);
  c_train->add_option("--gbt-depth", train.gbt_depth);
  c_train->add_option("--gbt-lr", train.gbt_lr);
  c_train->add_option("--gbt-lambda", train.gbt_lambda);
  c_train->add_option("--mlp-hidden", train.mlp_hidden, "Hidden layer widths");
  c_train->add_option("--mlp-epochs", train.mlp_epochs);
  c_train->add_option("--mlp-batch", train.mlp_batch);
  c_train->add_option("--mlp-patience", train.mlp_patience);
  c_train->add_option("--mlp-lr", train.mlp_lr);
  c_train->add_option("--exec", train.exec, "serial | parallel");

  EvaluateArgs evaluate;
  auto* c_eval = app.add_subcommand("evaluate", "Score a model on its held-out split");
  c_eval->add_option("--model", evaluate.model)->required();
  c_eval->add_option("--data", evaluate.data)->required();
  c_eval->add_flag("--all", evaluate.all, "Score every record instead of the test split");
  c_eval->add_option("--out", evaluate.out);

  PredictArgs predict;
  auto* c_predict = app.add_subcommand("predict", "Predict every record of a CSV");
  c_predict->add_option("--model", predict.model)->required();
  c_predict->add_option("--data", predict.data)->required();
  c_predict->add_option("--out", predict.out);

  ExplainArgs explain;
  auto* c_explain = app.add_subcommand("explain", "Shapley attributions and feature matrices");
  c_explain->add_option("--model", explain.model);
  c_explain->add_option("--data", explain.data)->required();
  c_explain->add_option("--task", explain.task, "Task for matrices without a model");
  c_explain->add_option("--out", explain.out, "Per-record attributions CSV");
  c_explain->add_option("--importance-out", explain.importance_out);
  c_explain->add_option("--association-out", explain.association_out);
  c_explain->add_option("--correlation-out", explain.correlation_out);
  c_explain->add_option("--bins", explain.bins);
  c_explain->add_option("--mc-samples", explain.mc_samples, "Sampled permutations (0: exact)");
  c_explain->add_option("--seed", explain.seed);

  CodalArgs codal;
  auto* c_codal = app.add_subcommand("compare-codal", "Compare code formulas with observed FR");
  c_codal->add_option("--data", codal.data)->required();
  c_codal->add_option("--method", codal.method, "EC2 | AS3600 | Ensemble");
  c_codal->add_option("--model", codal.model);
  c_codal->add_option("--profile", codal.profile, "AS3600 exponents: literal | corrected");
  auto* mu = c_codal->add_option("--mu-fi", codal.mu_fi, "Load level for EC2");
  c_codal->add_flag("--skip-unmappable", codal.skip);
  c_codal->add_option("--out", codal.out, "Residual CSV (default stdout)");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen-benchmark", "Generate the synthetic benchmark dataset");
  c_gen->add_option("--n", gen.n);
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--out", gen.out);

  ThroughputArgs tp;
  auto* c_tp = app.add_subcommand("benchmark-throughput", "Time batch prediction");
  c_tp->add_option("--model", tp.model)->required();
  c_tp->add_option("--n", tp.n);
  c_tp->add_option("--data", tp.data, "Records to predict instead of generated ones");
  c_tp->add_option("--seed", tp.seed);
  c_tp->add_option("--exec", tp.exec, "serial | parallel");

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Serve models over HTTP");
  c_serve->add_option("--model", serve.models, "Model file, one per task")->required();
  c_serve->add_option("--host", serve.host)->envname("PYRO_HOST");
  c_serve->add_option("--port", serve.port)->envname("PYRO_PORT");
  c_serve->add_option("--max-batch", serve.max_batch);

  std::string verb;
  try {
    app.parse(argc, argv);
    verb = app.get_subcommands().front()->get_name();
    if (verb == "ingest") RunIngest(ingest);
    else if (verb == "augment") RunAugment(augment);
    else if (verb == "train") RunTrain(train);
    else if (verb == "evaluate") RunEvaluate(evaluate);
    else if (verb == "predict") RunPredict(predict);
    else if (verb == "explain") RunExplain(explain);
    else if (verb == "compare-codal") {
      codal.mu_given = mu->count() > 0;
      RunCodal(codal);
    } else if (verb == "gen-benchmark") RunGen(gen);
    else if (verb == "benchmark-throughput") RunThroughput(tp);
    else if (verb == "serve") RunServe(serve);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ReportError(verb, "UsageError", e.what());
    return 2;
  } catch (const pyro::DataError& e) {
    ReportError(verb, std::string(pyro::ErrorCodeName(e.code())), e.what(), &e);
    return 1;
  } catch (const Error& e) {
    ReportError(verb, std::string(pyro::ErrorCodeName(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    ReportError(verb, "Internal", e.what());
    return 1;
  }
  return 0;
}
