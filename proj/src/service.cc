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

#include "pyro/service.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "httplib.h"
#include "pyro/codal.h"
#include "pyro/error.h"
#include "pyro/explain.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

using nlohmann::json;

// CSV column name per feature, in schema order.
constexpr std::array<std::string_view, kNumFeatures> kCsvNames = {
    "W_mm", "r_pct", "L_m", "fc_MPa", "fy_MPa", "K",
    "C_mm", "ex_mm", "ey_mm", "P_kN", "E", "S"};

json ErrorBody(std::string_view code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

HttpResponse Reply(int status, const json& body) { return {status, body.dump()}; }

json ViolationsJson(const std::vector<Violation>& violations) {
  json out = json::array();
  for (const auto& v : violations) {
    out.push_back({{"field", v.field},
                   {"message", v.message},
                   {"severity", v.severity == Severity::kError ? "error" : "warning"}});
  }
  return out;
}

bool IsClientError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidationFailed:
    case ErrorCode::kInvalidRecord:
    case ErrorCode::kBadNumeric:
    case ErrorCode::kUnknownEnum:
    case ErrorCode::kMissingFeature:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfValidityRange:
    case ErrorCode::kNonPositiveInput:
    case ErrorCode::kMappingFailure:
    case ErrorCode::kNegativeInput:
      return true;
    default:
      return false;
  }
}

std::string OpaqueId() {
  static std::atomic<uint64_t> counter{0};
  const uint64_t n = counter.fetch_add(1);
  const auto now = static_cast<uint64_t>(
      std::chrono::steady_clock::now().time_since_epoch().count());
  char buf[24];
  std::snprintf(buf, sizeof(buf), "E%016" PRIx64, DeriveSeed(now, n));
  return buf;
}

std::optional<Task> ParseTaskField(const json& request) {
  if (!request.contains("task") || !request["task"].is_string()) return std::nullopt;
  return TaskFromName(request["task"].get<std::string>());
}

// Every task feature must be given explicitly; defaults only stand in for
// features the task does not read.
void RequirePresent(const std::vector<Feature>& present, Task task,
                    std::vector<Violation>& violations) {
  for (Feature f : TaskFeatures(task)) {
    if (std::find(present.begin(), present.end(), f) == present.end()) {
      violations.push_back({std::string(FeatureName(f)),
                            "required for task " + std::string(TaskName(task)),
                            Severity::kError});
    }
  }
}

}  // namespace

ColumnRecord RecordFromJson(const json& j, std::vector<Violation>& violations,
                            std::vector<Feature>* present) {
  ColumnRecord rec;
  auto fail = [&](std::string field, std::string message) {
    violations.push_back({std::move(field), std::move(message), Severity::kError});
  };
  if (!j.is_object()) {
    fail("record", "must be a JSON object");
    return rec;
  }
  if (j.contains("id")) {
    if (j["id"].is_string()) rec.id = j["id"].get<std::string>();
    else fail("id", "must be a string");
  }
  if (j.contains("provenance")) {
    try {
      rec.provenance = ParseProvenance(j["provenance"].get<std::string>());
    } catch (const std::exception& e) {
      fail("provenance", e.what());
    }
  }
  for (size_t i = 0; i < kNumFeatures; ++i) {
    const auto f = static_cast<Feature>(i);
    const std::string name(FeatureName(f));
    const json* v = nullptr;
    if (j.contains(name)) v = &j[name];
    else if (j.contains(std::string(kCsvNames[i]))) v = &j[std::string(kCsvNames[i])];
    if (v == nullptr || v->is_null()) continue;
    try {
      if (f == Feature::kK) {
        if (!v->is_string()) throw Error(ErrorCode::kUnknownEnum, "must be FF, FP or PP");
        rec.restraint = ParseRestraint(v->get<std::string>());
      } else if (f == Feature::kE) {
        if (!v->is_string()) throw Error(ErrorCode::kUnknownEnum, "must be a string");
        rec.exposure = ParseExposure(v->get<std::string>());
      } else {
        if (!v->is_number()) throw Error(ErrorCode::kBadNumeric, "must be a number");
        const double x = v->get<double>();
        if (!std::isfinite(x)) throw Error(ErrorCode::kBadNumeric, "must be finite");
        if (f == Feature::kS) {
          if (x != std::round(x) || std::abs(x) > 1e6) {
            throw Error(ErrorCode::kBadNumeric, "exposed faces must be an integer");
          }
          rec.exposed_faces = static_cast<int>(x);
        } else {
          switch (f) {
            case Feature::kW: rec.width_mm = x; break;
            case Feature::kR: rec.steel_ratio_pct = x; break;
            case Feature::kL: rec.length_m = x; break;
            case Feature::kFc: rec.fc_mpa = x; break;
            case Feature::kFy: rec.fy_mpa = x; break;
            case Feature::kC: rec.cover_mm = x; break;
            case Feature::kEx: rec.ecc_x_mm = x; break;
            case Feature::kEy: rec.ecc_y_mm = x; break;
            case Feature::kP: rec.load_kn = x; break;
            default: break;
          }
        }
      }
      if (present) present->push_back(f);
    } catch (const std::exception& e) {
      fail(name, e.what());
    }
  }
  for (const char* key : {"FR", "FR_min"}) {
    if (j.contains(key) && j[key].is_number()) rec.fire_resistance_min = j[key].get<double>();
  }
  if (j.contains("SP") && (j["SP"].is_boolean() || j["SP"].is_number())) {
    rec.spalled = j["SP"].is_boolean() ? j["SP"].get<bool>() : j["SP"].get<double>() != 0.0;
  }
  return rec;
}

json RecordToJson(const ColumnRecord& rec) {
  json j = {{"id", rec.id}, {"provenance", ProvenanceName(rec.provenance)}};
  for (size_t i = 0; i < kNumFeatures; ++i) {
    const auto f = static_cast<Feature>(i);
    const std::string name(FeatureName(f));
    if (f == Feature::kK) j[name] = RestraintName(rec.restraint);
    else if (f == Feature::kE) j[name] = ExposureName(rec.exposure);
    else if (const auto v = rec.Value(f)) j[name] = *v;
  }
  return j;
}

Service::Service(std::vector<ModelBundle> bundles, ServiceConfig config)
    : config_(std::move(config)) {
  for (auto& b : bundles) {
    const Task task = b.model.task;
    if (models_.count(task)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "two models given for task " + std::string(TaskName(task)));
    }
    models_.emplace(task, std::move(b));
  }
}

json Service::Fingerprints() const {
  json out = json::object();
  for (const auto& [task, b] : models_) out[std::string(TaskName(task))] = b.fingerprint;
  return out;
}

HttpResponse Service::Handle(std::string_view method, std::string_view path,
                             std::string_view body) const {
  try {
    if (method == "GET" && path == "/v1/schema") return Schema();
    if (method == "GET" && path == "/v1/model") return Model();
    const bool post = method == "POST";
    if (post && (path == "/v1/predict" || path == "/v1/explain" || path == "/v1/codal")) {
      json request;
      try {
        request = json::parse(body);
      } catch (const json::exception& e) {
        return Reply(400, ErrorBody("BadRequest", std::string("body is not JSON: ") + e.what()));
      }
      if (!request.is_object()) {
        return Reply(400, ErrorBody("BadRequest", "body must be a JSON object"));
      }
      if (path == "/v1/predict") return Predict(request);
      if (path == "/v1/explain") return Explain(request);
      return Codal(request);
    }
    return Reply(404, ErrorBody("NotFound", "no route for " + std::string(method) + " " +
                                                std::string(path)));
  } catch (const ValidationError& e) {
    json b = ErrorBody("ValidationFailed", e.what());
    b["violations"] = ViolationsJson(e.violations());
    return Reply(400, b);
  } catch (const Error& e) {
    if (IsClientError(e.code())) return Reply(400, ErrorBody(ErrorCodeName(e.code()), e.what()));
    const auto id = OpaqueId();
    std::cerr << "request failed [" << id << "]: " << ErrorCodeName(e.code()) << ": "
              << e.what() << "\n";
    return Reply(500, {{"error", "Internal"}, {"id", id}});
  } catch (const std::exception& e) {
    const auto id = OpaqueId();
    std::cerr << "request failed [" << id << "]: " << e.what() << "\n";
    return Reply(500, {{"error", "Internal"}, {"id", id}});
  }
}

HttpResponse Service::Predict(const json& request) const {
  std::vector<json> items;
  if (request.contains("records")) {
    if (!request["records"].is_array()) {
      return Reply(400, ErrorBody("BadRequest", "records must be an array"));
    }
    if (request["records"].size() > config_.max_batch) {
      return Reply(413, ErrorBody("BatchTooLarge",
                                  std::to_string(request["records"].size()) +
                                      " records exceed the limit of " +
                                      std::to_string(config_.max_batch)));
    }
    for (const auto& r : request["records"]) items.push_back(r);
  } else if (request.contains("record")) {
    items.push_back(request["record"]);
  } else {
    return Reply(400, ErrorBody("BadRequest", "expected 'record' or 'records'"));
  }

  std::vector<Task> tasks;
  if (request.contains("tasks")) {
    for (const auto& t : request["tasks"]) {
      const auto task = t.is_string() ? TaskFromName(t.get<std::string>()) : std::nullopt;
      if (!task || !models_.count(*task)) {
        return Reply(400, ErrorBody("BadRequest", "task not served: " + t.dump()));
      }
      tasks.push_back(*task);
    }
  } else {
    for (const auto& [task, b] : models_) tasks.push_back(task);
  }
  if (tasks.empty()) return Reply(400, ErrorBody("BadRequest", "no model loaded"));

  std::vector<ColumnRecord> records;
  for (size_t i = 0; i < items.size(); ++i) {
    std::vector<Violation> violations;
    std::vector<Feature> present;
    ColumnRecord rec = RecordFromJson(items[i], violations, &present);
    if (rec.id.empty()) rec.id = "record-" + std::to_string(i + 1);
    for (Task task : tasks) {
      RequirePresent(present, task, violations);
      for (auto& v : ValidateRecord(rec, FeatureSchema::ForTask(task), false,
                                    Purpose::kPrediction)) {
        violations.push_back(std::move(v));
      }
    }
    if (HasErrors(violations)) {
      json b = ErrorBody("ValidationFailed", "record '" + rec.id + "' failed validation");
      b["index"] = i;
      b["id"] = rec.id;
      b["violations"] = ViolationsJson(violations);
      return Reply(400, b);
    }
    records.push_back(std::move(rec));
  }

  std::map<Task, std::vector<EnsemblePrediction>> results;
  for (Task task : tasks) results[task] = PredictBatch(models_.at(task).model, records);

  json out = json::array();
  for (size_t i = 0; i < records.size(); ++i) {
    json p = {{"id", records[i].id},
              {"sp_probability", nullptr},
              {"sp_label", nullptr},
              {"fr_minutes", nullptr},
              {"rating_class", nullptr},
              {"members", json::object()}};
    for (const auto& [task, preds] : results) {
      const auto& r = preds[i];
      json members = json::object();
      for (size_t m = 0; m < kNumMembers; ++m) {
        members[std::string(MemberName(static_cast<Member>(m)))] = r.members[m];
      }
      p["members"][std::string(TaskName(task))] = members;
      if (task == Task::kSpalling) {
        p["sp_probability"] = r.value;
        p["sp_label"] = *r.label;
      } else if (task == Task::kFireResistance) {
        p["fr_minutes"] = r.value;
        if (!results.count(Task::kRatingClass)) p["rating_class"] = RatingClassName(*r.rating);
      } else {
        p["rating_class"] = RatingClassName(*r.rating);
      }
    }
    out.push_back(p);
  }
  return Reply(200, {{"predictions", out}, {"model_fingerprints", Fingerprints()}});
}

HttpResponse Service::Explain(const json& request) const {
  const auto task = ParseTaskField(request);
  if (!task || !models_.count(*task)) {
    return Reply(400, ErrorBody("BadRequest", "request must name a served task"));
  }
  if (!request.contains("record")) return Reply(400, ErrorBody("BadRequest", "missing record"));
  std::vector<Violation> violations;
  std::vector<Feature> present;
  ColumnRecord rec = RecordFromJson(request["record"], violations, &present);
  if (rec.id.empty()) rec.id = "record-1";
  RequirePresent(present, *task, violations);
  if (HasErrors(violations)) throw ValidationError(rec.id, violations);
  const auto& bundle = models_.at(*task);
  const Explanation e = ExplainRecord(bundle.model, rec, bundle.model.background);
  json contributions = json::object();
  for (size_t i = 0; i < e.features.size(); ++i) contributions[e.features[i]] = e.contributions[i];
  return Reply(200, {{"task", TaskName(*task)},
                     {"id", rec.id},
                     {"baseline", e.baseline},
                     {"features", e.features},
                     {"contributions", contributions},
                     {"prediction", e.prediction},
                     {"model_fingerprint", bundle.fingerprint},
                     {"model_fingerprints", Fingerprints()}});
}

HttpResponse Service::Codal(const json& request) const {
  if (!request.contains("record")) return Reply(400, ErrorBody("BadRequest", "missing record"));
  std::vector<Violation> violations;
  ColumnRecord rec = RecordFromJson(request["record"], violations);
  if (rec.id.empty()) rec.id = "record-1";
  for (auto& v : ValidateRecord(rec, FeatureSchema::ForTask(Task::kSpalling), false,
                                Purpose::kPrediction)) {
    violations.push_back(std::move(v));
  }
  if (HasErrors(violations)) throw ValidationError(rec.id, violations);

  CodalMapping mapping;
  if (request.contains("mu_fi")) {
    if (!request["mu_fi"].is_number()) {
      return Reply(400, ErrorBody("BadRequest", "mu_fi must be a number"));
    }
    mapping.mu_fi = request["mu_fi"].get<double>();
    mapping.mu_fi_defaulted = false;
  }
  As3600Profile profile = As3600Profile::Literal();
  if (request.contains("as3600_profile")) {
    const auto name = request["as3600_profile"].is_string()
                          ? request["as3600_profile"].get<std::string>()
                          : std::string();
    if (name == "corrected") profile = As3600Profile::Corrected();
    else if (name != "literal") {
      return Reply(400, ErrorBody("BadRequest", "as3600_profile must be literal or corrected"));
    }
  }

  json ec2;
  try {
    const auto p = MapEc2(rec, mapping);
    const auto r = Ec2FireResistance(p);
    ec2 = {{"minutes", r.minutes},
           {"terms",
            {{"R_load", r.r_load},
             {"R_a", r.r_axis},
             {"R_l", r.r_length},
             {"R_b", r.r_section},
             {"R_n", r.r_bars}}},
           {"inputs",
            {{"mu_fi", p.mu_fi},
             {"omega", p.omega},
             {"alpha_cc", p.alpha_cc},
             {"a_mm", p.axis_distance_mm},
             {"l_fi_m", p.effective_length_m},
             {"b_prime_mm", p.b_prime_mm},
             {"n_bars", p.n_bars}}},
           {"length_clamped", r.length_clamped},
           {"mu_fi_defaulted", mapping.mu_fi_defaulted}};
  } catch (const Error& e) {
    ec2 = ErrorBody(ErrorCodeName(e.code()), e.what());
  }
  json as;
  try {
    const auto p = MapAs3600(rec, mapping);
    as = {{"minutes", As3600FireResistance(p, profile)},
          {"inputs",
           {{"k", p.k},
            {"fc_MPa", p.fc_mpa},
            {"B_mm", p.b_mm},
            {"D_mm", p.d_mm},
            {"N_kN", p.n_kn},
            {"Le_mm", p.le_mm}}}};
  } catch (const Error& e) {
    as = ErrorBody(ErrorCodeName(e.code()), e.what());
  }
  as["profile"] = {{"name", profile.name},
                   {"e_fc", profile.e_fc},
                   {"e_B", profile.e_b},
                   {"e_D", profile.e_d},
                   {"e_N", profile.e_n},
                   {"e_Le", profile.e_le},
                   {"scale", profile.scale}};
  return Reply(200, {{"id", rec.id},
                     {"ec2", ec2},
                     {"as3600", as},
                     {"model_fingerprints", Fingerprints()}});
}

HttpResponse Service::Schema() const {
  json tasks = json::object();
  for (Task task : {Task::kSpalling, Task::kFireResistance, Task::kRatingClass}) {
    const auto schema = FeatureSchema::ForTask(task);
    json features = json::array();
    for (const auto& s : schema.specs()) {
      const auto& tf = schema.task_features();
      features.push_back(
          {{"name", s.name},
           {"unit", s.unit},
           {"kind", s.kind == FeatureKind::kContinuous ? "continuous" : "categorical"},
           {"min", s.min},
           {"max", s.max},
           {"used", std::find(tf.begin(), tf.end(), s.feature) != tf.end()}});
    }
    tasks[std::string(TaskName(task))] = {{"fingerprint", schema.Fingerprint()},
                                          {"features", features}};
  }
  return Reply(200, {{"tasks", tasks},
                     {"csv_header", kCsvHeader},
                     {"enums",
                      {{"K", {"FF", "FP", "PP"}},
                       {"E", {"ASTM_E119", "ISO834", "HC", "DESIGN", "OTHER:<label>"}},
                       {"S", {1, 2, 3, 4}}}},
                     {"max_batch", config_.max_batch},
                     {"model_fingerprints", Fingerprints()}});
}

HttpResponse Service::Model() const {
  json models = json::array();
  for (const auto& [task, b] : models_) {
    const auto& m = b.model;
    json fitness = json::array();
    for (size_t i = 0; i < kNumMembers; ++i) {
      fitness.push_back({{"member", MemberName(static_cast<Member>(i))},
                         {"metric", m.fitness[i].metric},
                         {"train", m.fitness[i].train},
                         {"validation", m.fitness[i].validation}});
    }
    models.push_back({{"task", TaskName(task)},
                      {"fingerprint", b.fingerprint},
                      {"policy", PolicyName(m.policy)},
                      {"chosen", m.chosen ? json(MemberName(*m.chosen)) : json(nullptr)},
                      {"fitness", fitness},
                      {"seed", b.metadata.seed},
                      {"split_fraction", b.metadata.split_fraction},
                      {"provenance_counts", b.metadata.provenance_counts}});
  }
  return Reply(200, {{"format_version", kFormatVersion},
                     {"models", models},
                     {"model_fingerprints", Fingerprints()}});
}

void RunServer(const Service& service) {
  httplib::Server server;
  server.set_payload_max_length(256u << 20);
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.Handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Put(".*", handler);
  server.Delete(".*", handler);
  server.Patch(".*", handler);
  const auto& c = service.config();
  std::cerr << "listening on " << c.host << ":" << c.port << "\n";
  if (!server.listen(c.host, c.port)) {
    throw Error(ErrorCode::kIo, "cannot listen on " + c.host + ":" + std::to_string(c.port));
  }
}

}  // namespace pyro
