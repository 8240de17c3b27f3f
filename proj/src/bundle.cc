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

#include "pyro/bundle.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pyro/error.h"

namespace pyro {
namespace {

using nlohmann::json;

json TreeToJson(const Tree& t) {
  json feature = json::array(), threshold = json::array(), left = json::array(),
       right = json::array(), n = json::array(), value = json::array();
  for (const auto& node : t.nodes) {
    feature.push_back(node.feature);
    threshold.push_back(node.threshold);
    left.push_back(node.left);
    right.push_back(node.right);
    n.push_back(node.n_samples);
    value.push_back(node.value);
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left},
          {"right", right},     {"n_samples", n},         {"value", value}};
}

Tree TreeFromJson(const json& j) {
  Tree t;
  const auto& feature = j.at("feature");
  const size_t n = feature.size();
  for (const char* key : {"threshold", "left", "right", "n_samples", "value"}) {
    if (j.at(key).size() != n) throw Error(ErrorCode::kCorruptFile, "tree arrays differ in length");
  }
  for (size_t i = 0; i < n; ++i) {
    TreeNode node;
    node.feature = feature[i].get<int>();
    node.threshold = j["threshold"][i].get<double>();
    node.left = j["left"][i].get<int>();
    node.right = j["right"][i].get<int>();
    node.n_samples = j["n_samples"][i].get<int>();
    node.value = j["value"][i].get<std::vector<double>>();
    const int limit = static_cast<int>(n);
    if (!node.is_leaf() && (node.left <= static_cast<int>(i) || node.left >= limit ||
                            node.right <= static_cast<int>(i) || node.right >= limit)) {
      throw Error(ErrorCode::kCorruptFile, "tree child index out of range");
    }
    t.nodes.push_back(std::move(node));
  }
  if (t.nodes.empty()) throw Error(ErrorCode::kCorruptFile, "empty tree");
  return t;
}

json ForestToJson(const ForestModel& m) {
  json trees = json::array();
  for (const auto& t : m.trees) trees.push_back(TreeToJson(t));
  const auto& p = m.params;
  return {{"type", m.type == TaskType::kClassification ? "classification" : "regression"},
          {"n_classes", m.n_classes},
          {"feature_names", m.feature_names},
          {"training_mean", m.training_mean},
          {"params",
           {{"n_trees", p.n_trees},
            {"max_leaf_nodes", p.max_leaf_nodes},
            {"min_samples_split", p.min_samples_split},
            {"max_depth", p.max_depth},
            {"bootstrap", p.bootstrap},
            {"features_per_split", p.features_per_split},
            {"seed", p.seed}}},
          {"trees", trees}};
}

ForestModel ForestFromJson(const json& j) {
  ForestModel m;
  const auto type = j.at("type").get<std::string>();
  if (type != "classification" && type != "regression") {
    throw Error(ErrorCode::kCorruptFile, "unknown forest type '" + type + "'");
  }
  m.type = type == "classification" ? TaskType::kClassification : TaskType::kRegression;
  m.n_classes = j.at("n_classes").get<int>();
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  m.training_mean = j.at("training_mean").get<std::vector<double>>();
  const auto& p = j.at("params");
  m.params.n_trees = p.at("n_trees").get<int>();
  m.params.max_leaf_nodes = p.at("max_leaf_nodes").get<int>();
  m.params.min_samples_split = p.at("min_samples_split").get<int>();
  m.params.max_depth = p.at("max_depth").get<int>();
  m.params.bootstrap = p.at("bootstrap").get<bool>();
  m.params.features_per_split = p.at("features_per_split").get<int>();
  m.params.seed = p.at("seed").get<uint64_t>();
  for (const auto& t : j.at("trees")) m.trees.push_back(TreeFromJson(t));
  return m;
}

json GbtToJson(const GbtModel& m) {
  json stages = json::array();
  for (const auto& t : m.stages) stages.push_back(TreeToJson(t));
  const auto& p = m.params;
  return {{"loss", m.loss == GbtLoss::kLogistic ? "logistic" : "squared"},
          {"base_score", m.base_score},
          {"params",
           {{"n_stages", p.n_stages},
            {"learning_rate", p.learning_rate},
            {"max_depth", p.max_depth},
            {"lambda", p.lambda},
            {"min_samples_split", p.min_samples_split}}},
          {"training_loss", m.training_loss},
          {"stages", stages}};
}

GbtModel GbtFromJson(const json& j) {
  GbtModel m;
  const auto loss = j.at("loss").get<std::string>();
  if (loss != "logistic" && loss != "squared") {
    throw Error(ErrorCode::kCorruptFile, "unknown boosting loss '" + loss + "'");
  }
  m.loss = loss == "logistic" ? GbtLoss::kLogistic : GbtLoss::kSquared;
  m.base_score = j.at("base_score").get<double>();
  const auto& p = j.at("params");
  m.params.n_stages = p.at("n_stages").get<int>();
  m.params.learning_rate = p.at("learning_rate").get<double>();
  m.params.max_depth = p.at("max_depth").get<int>();
  m.params.lambda = p.at("lambda").get<double>();
  m.params.min_samples_split = p.at("min_samples_split").get<int>();
  m.training_loss = j.at("training_loss").get<std::vector<double>>();
  for (const auto& t : j.at("stages")) m.stages.push_back(TreeFromJson(t));
  return m;
}

json MlpToJson(const MlpModel& m) {
  const auto& p = m.params();
  json layers = json::array();
  for (const auto& layer : m.layers()) {
    json weights = json::array();
    for (size_t r = 0; r < layer.out; ++r) {
      weights.push_back(std::vector<double>(p.begin() + layer.weights + r * layer.in,
                                            p.begin() + layer.weights + (r + 1) * layer.in));
    }
    json l = {{"shape", {layer.out, layer.in}},
              {"weights", weights},
              {"bias", std::vector<double>(p.begin() + layer.bias,
                                           p.begin() + layer.bias + layer.out)}};
    if (layer.alpha) {
      l["alpha"] = std::vector<double>(p.begin() + *layer.alpha,
                                       p.begin() + *layer.alpha + layer.out);
    }
    layers.push_back(l);
  }
  return {{"layer_sizes", m.layer_sizes()},
          {"link", m.link() == OutputLink::kSigmoid ? "sigmoid" : "identity"},
          {"output_scale", m.output_scale},
          {"output_offset", m.output_offset},
          {"layers", layers},
          {"training_loss", m.training_loss},
          {"validation_loss", m.validation_loss}};
}

MlpModel MlpFromJson(const json& j) {
  const auto link_name = j.at("link").get<std::string>();
  if (link_name != "sigmoid" && link_name != "identity") {
    throw Error(ErrorCode::kCorruptFile, "unknown output link '" + link_name + "'");
  }
  MlpModel m(j.at("layer_sizes").get<std::vector<size_t>>(),
             link_name == "sigmoid" ? OutputLink::kSigmoid : OutputLink::kIdentity);
  m.output_scale = j.at("output_scale").get<double>();
  m.output_offset = j.at("output_offset").get<double>();
  m.training_loss = j.at("training_loss").get<std::vector<double>>();
  m.validation_loss = j.at("validation_loss").get<std::vector<double>>();
  const auto& layers = j.at("layers");
  if (layers.size() != m.layers().size()) {
    throw Error(ErrorCode::kCorruptFile, "layer count does not match layer sizes");
  }
  auto& p = m.params();
  for (size_t l = 0; l < layers.size(); ++l) {
    const auto& spec = m.layers()[l];
    const auto& lj = layers[l];
    const auto shape = lj.at("shape").get<std::vector<size_t>>();
    const auto weights = lj.at("weights").get<std::vector<std::vector<double>>>();
    const auto bias = lj.at("bias").get<std::vector<double>>();
    if (shape != std::vector<size_t>{spec.out, spec.in} || weights.size() != spec.out ||
        bias.size() != spec.out) {
      throw Error(ErrorCode::kCorruptFile, "layer " + std::to_string(l) + " shape mismatch");
    }
    for (size_t r = 0; r < spec.out; ++r) {
      if (weights[r].size() != spec.in) {
        throw Error(ErrorCode::kCorruptFile, "weight row width mismatch");
      }
      std::copy(weights[r].begin(), weights[r].end(), p.begin() + spec.weights + r * spec.in);
    }
    std::copy(bias.begin(), bias.end(), p.begin() + spec.bias);
    if (spec.alpha) {
      const auto alpha = lj.at("alpha").get<std::vector<double>>();
      if (alpha.size() != spec.out) throw Error(ErrorCode::kCorruptFile, "alpha width mismatch");
      std::copy(alpha.begin(), alpha.end(), p.begin() + *spec.alpha);
    }
  }
  return m;
}

json MatrixToJson(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix MatrixFromJson(const json& j) {
  const auto rows = j.at("rows").get<size_t>();
  const auto cols = j.at("cols").get<size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) throw Error(ErrorCode::kCorruptFile, "matrix size mismatch");
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    std::copy(data.begin() + r * cols, data.begin() + (r + 1) * cols, m.row(r).begin());
  }
  return m;
}

}  // namespace

ModelBundle MakeBundle(EnsembleModel model, TrainingMetadata metadata) {
  ModelBundle b;
  b.fingerprint = model.schema().Fingerprint();
  b.model = std::move(model);
  b.metadata = std::move(metadata);
  return b;
}

std::string SerializeBundle(const ModelBundle& bundle) {
  const auto& m = bundle.model;
  json fitness = json::array();
  for (size_t i = 0; i < kNumMembers; ++i) {
    fitness.push_back({{"member", MemberName(static_cast<Member>(i))},
                       {"metric", m.fitness[i].metric},
                       {"train", m.fitness[i].train},
                       {"validation", m.fitness[i].validation}});
  }
  json meta = {{"seed", bundle.metadata.seed},
               {"split_fraction", bundle.metadata.split_fraction},
               {"stratified", bundle.metadata.stratified},
               {"provenance_counts", bundle.metadata.provenance_counts}};
  if (bundle.metadata.created_at) meta["created_at"] = *bundle.metadata.created_at;
  const json j = {
      {"format_version", kFormatVersion},
      {"task", TaskName(m.task)},
      {"schema_fingerprint", bundle.fingerprint},
      {"ensemble",
       {{"policy", PolicyName(m.policy)},
        {"chosen", m.chosen ? json(MemberName(*m.chosen)) : json(nullptr)},
        {"seed", m.seed},
        {"fitness", fitness}}},
      {"members", {{"forest", ForestToJson(m.forest)},
                   {"gbt", GbtToJson(m.gbt)},
                   {"mlp", MlpToJson(m.mlp)}}},
      {"background", MatrixToJson(m.background)},
      {"metadata", meta}};
  return j.dump() + "\n";
}

ModelBundle ParseBundle(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("format_version")) {
      throw Error(ErrorCode::kCorruptFile, "model file lacks format_version");
    }
    const int version = j.at("format_version").get<int>();
    if (version != kFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "model format_version " + std::to_string(version) + ", expected " +
                      std::to_string(kFormatVersion));
    }
    const auto task = TaskFromName(j.at("task").get<std::string>());
    if (!task) throw Error(ErrorCode::kCorruptFile, "unknown task in model file");
    ModelBundle b;
    b.fingerprint = j.at("schema_fingerprint").get<std::string>();
    const auto expected = FeatureSchema::ForTask(*task).Fingerprint();
    if (b.fingerprint != expected) {
      throw Error(ErrorCode::kSchemaFingerprintMismatch,
                  "model schema fingerprint " + b.fingerprint + " does not match " + expected);
    }
    auto& m = b.model;
    m.task = *task;
    const auto& env = j.at("ensemble");
    const auto policy = PolicyFromName(env.at("policy").get<std::string>());
    if (!policy) throw Error(ErrorCode::kCorruptFile, "unknown ensemble policy");
    m.policy = *policy;
    m.seed = env.at("seed").get<uint64_t>();
    if (!env.at("chosen").is_null()) {
      const auto name = env.at("chosen").get<std::string>();
      bool found = false;
      for (size_t i = 0; i < kNumMembers; ++i) {
        if (MemberName(static_cast<Member>(i)) == name) {
          m.chosen = static_cast<Member>(i);
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::kCorruptFile, "unknown chosen member '" + name + "'");
    }
    const auto& fitness = env.at("fitness");
    if (fitness.size() != kNumMembers) {
      throw Error(ErrorCode::kCorruptFile, "fitness record needs three members");
    }
    for (size_t i = 0; i < kNumMembers; ++i) {
      m.fitness[i] = {fitness[i].at("metric").get<std::string>(),
                      fitness[i].at("train").get<double>(),
                      fitness[i].at("validation").get<double>()};
    }
    const auto& members = j.at("members");
    m.forest = ForestFromJson(members.at("forest"));
    m.gbt = GbtFromJson(members.at("gbt"));
    m.mlp = MlpFromJson(members.at("mlp"));
    m.background = MatrixFromJson(j.at("background"));
    const size_t width = TaskFeatures(*task).size();
    if (m.mlp.input_width() != NeuralEncoder(FeatureSchema::ForTask(*task)).output_width() ||
        (m.background.rows() > 0 && m.background.cols() != width)) {
      throw Error(ErrorCode::kCorruptFile, "member input widths do not match the task");
    }
    const auto& meta = j.at("metadata");
    b.metadata.seed = meta.at("seed").get<uint64_t>();
    b.metadata.split_fraction = meta.at("split_fraction").get<double>();
    b.metadata.stratified = meta.at("stratified").get<bool>();
    b.metadata.provenance_counts =
        meta.at("provenance_counts").get<std::map<std::string, size_t>>();
    if (meta.contains("created_at")) b.metadata.created_at = meta["created_at"].get<std::string>();
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, std::string("malformed model file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kVersionMismatch ||
        e.code() == ErrorCode::kSchemaFingerprintMismatch ||
        e.code() == ErrorCode::kCorruptFile) {
      throw;
    }
    throw Error(ErrorCode::kCorruptFile, std::string("malformed model file: ") + e.what());
  }
}

void SaveBundle(const ModelBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << SerializeBundle(bundle);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

ModelBundle LoadBundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return ParseBundle(text.str());
}

}  // namespace pyro
