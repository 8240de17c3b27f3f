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

#include "pyro/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "pyro/error.h"
#include "pyro/rating.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "W", "r", "L", "fc", "fy", "K", "C", "ex", "ey", "P", "E", "S"};

constexpr std::array<std::string_view, 16> kCsvColumns = {
    "id",   "provenance", "W_mm",  "r_pct", "L_m",  "fc_MPa",
    "fy_MPa", "K",        "C_mm",  "ex_mm", "ey_mm", "P_kN",
    "E",    "S",          "FR_min", "SP"};

struct Range {
  double min;
  double max;
};

// Plausible ranges from the "all observations" rows of the fire-resistance
// partition; the spalling partition overrides the five spalling features.
constexpr std::array<Range, kNumFeatures> kFireResistanceRanges = {{
    {200.0, 914.0},   // W
    {0.9, 4.4},       // r
    {2.1, 5.8},       // L
    {24.0, 138.0},    // fc
    {354.0, 591.0},   // fy
    {0.0, 2.0},       // K
    {23.0, 64.0},     // C
    {0.0, 150.0},     // ex
    {0.0, 75.0},      // ey
    {0.0, 5373.0},    // P
    {0.0, 4.0},       // E
    {1.0, 4.0},       // S
}};

// Union of the real, synthetic and all-observation spalling rows.
constexpr Range kSpallingW = {152.0, 514.0};
constexpr Range kSpallingR = {0.3, 11.7};
constexpr Range kSpallingFc = {15.0, 126.5};
constexpr Range kSpallingC = {13.0, 64.0};
constexpr Range kSpallingP = {0.0, 5373.0};

constexpr std::array<std::string_view, kNumFeatures> kUnits = {
    "mm", "%", "m", "MPa", "MPa", "", "mm", "mm", "mm", "kN", "", "faces"};

bool IsSpallingFeature(Feature f) {
  return f == Feature::kW || f == Feature::kR || f == Feature::kFc ||
         f == Feature::kC || f == Feature::kP;
}

bool IsCategorical(Feature f) {
  return f == Feature::kK || f == Feature::kE || f == Feature::kS;
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      break;
    }
    out.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::optional<double> ParseNumber(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

uint64_t Fnv1a(std::string_view text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

// --- names and enums --------------------------------------------------------

std::string_view FeatureName(Feature f) {
  return kFeatureNames[static_cast<size_t>(f)];
}

std::optional<Feature> FeatureFromName(std::string_view name) {
  for (size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (kFeatureNames[i] == name) return static_cast<Feature>(i);
  }
  if (name == "b") return Feature::kW;  // width alias used in reports
  return std::nullopt;
}

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kSpalling: return "spalling";
    case Task::kFireResistance: return "fire_resistance";
    case Task::kRatingClass: return "rating_class";
  }
  return "";
}

std::optional<Task> TaskFromName(std::string_view name) {
  if (name == "spalling") return Task::kSpalling;
  if (name == "fire_resistance" || name == "fire-resistance") {
    return Task::kFireResistance;
  }
  if (name == "rating_class" || name == "rating-class") return Task::kRatingClass;
  return std::nullopt;
}

std::vector<Feature> TaskFeatures(Task task) {
  std::vector<Feature> out;
  for (size_t i = 0; i < kNumFeatures; ++i) {
    const auto f = static_cast<Feature>(i);
    if (task != Task::kSpalling || IsSpallingFeature(f)) out.push_back(f);
  }
  return out;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kReal: return "real";
    case Provenance::kSynthetic: return "synthetic";
    case Provenance::kAugmented: return "augmented";
  }
  return "";
}

Provenance ParseProvenance(std::string_view text) {
  if (text == "real") return Provenance::kReal;
  if (text == "synthetic") return Provenance::kSynthetic;
  if (text == "augmented") return Provenance::kAugmented;
  throw Error(ErrorCode::kUnknownEnum,
              "unknown provenance '" + std::string(text) + "'");
}

std::string_view RestraintName(Restraint k) {
  switch (k) {
    case Restraint::kFixedFixed: return "FF";
    case Restraint::kFixedPinned: return "FP";
    case Restraint::kPinnedPinned: return "PP";
  }
  return "";
}

Restraint ParseRestraint(std::string_view text) {
  if (text == "FF") return Restraint::kFixedFixed;
  if (text == "FP") return Restraint::kFixedPinned;
  if (text == "PP") return Restraint::kPinnedPinned;
  throw Error(ErrorCode::kUnknownEnum,
              "unknown restraint '" + std::string(text) + "'");
}

std::string ExposureName(const FireExposure& e) {
  switch (e.kind) {
    case ExposureKind::kAstmE119: return "ASTM_E119";
    case ExposureKind::kIso834: return "ISO834";
    case ExposureKind::kHydrocarbon: return "HC";
    case ExposureKind::kDesign: return "DESIGN";
    case ExposureKind::kOther: return "OTHER:" + e.label;
  }
  return "";
}

FireExposure ParseExposure(std::string_view text) {
  if (text == "ASTM_E119") return {ExposureKind::kAstmE119, ""};
  if (text == "ISO834") return {ExposureKind::kIso834, ""};
  if (text == "HC") return {ExposureKind::kHydrocarbon, ""};
  if (text == "DESIGN") return {ExposureKind::kDesign, ""};
  if (text.starts_with("OTHER:") && text.size() > 6) {
    return {ExposureKind::kOther, std::string(text.substr(6))};
  }
  throw Error(ErrorCode::kUnknownEnum,
              "unknown fire exposure '" + std::string(text) + "'");
}

// --- record ------------------------------------------------------------------

std::optional<double> ColumnRecord::Value(Feature f) const {
  switch (f) {
    case Feature::kW: return width_mm;
    case Feature::kR: return steel_ratio_pct;
    case Feature::kL: return length_m;
    case Feature::kFc: return fc_mpa;
    case Feature::kFy: return fy_mpa;
    case Feature::kK: return static_cast<double>(restraint);
    case Feature::kC: return cover_mm;
    case Feature::kEx: return ecc_x_mm;
    case Feature::kEy: return ecc_y_mm;
    case Feature::kP: return load_kn;
    case Feature::kE: return static_cast<double>(exposure.kind);
    case Feature::kS: return static_cast<double>(exposed_faces);
  }
  return std::nullopt;
}

void ColumnRecord::SetValue(Feature f, double value) {
  auto code = [&](int n) {
    const double r = std::round(value);
    if (r != value || r < 0 || r >= n) {
      throw Error(ErrorCode::kOutOfRange, "invalid categorical code " +
                                              FormatDouble(value) + " for " +
                                              std::string(FeatureName(f)));
    }
    return static_cast<int>(r);
  };
  switch (f) {
    case Feature::kW: width_mm = value; break;
    case Feature::kR: steel_ratio_pct = value; break;
    case Feature::kL: length_m = value; break;
    case Feature::kFc: fc_mpa = value; break;
    case Feature::kFy: fy_mpa = value; break;
    case Feature::kK: restraint = static_cast<Restraint>(code(3)); break;
    case Feature::kC: cover_mm = value; break;
    case Feature::kEx: ecc_x_mm = value; break;
    case Feature::kEy: ecc_y_mm = value; break;
    case Feature::kP: load_kn = value; break;
    case Feature::kE: {
      const auto kind = static_cast<ExposureKind>(code(5));
      if (kind != exposure.kind) {
        exposure.kind = kind;
        exposure.label = kind == ExposureKind::kOther ? "unspecified" : "";
      }
      break;
    }
    case Feature::kS: {
      const double r = std::round(value);
      if (r != value) {
        throw Error(ErrorCode::kOutOfRange, "exposed faces must be an integer");
      }
      exposed_faces = static_cast<int>(r);
      break;
    }
  }
}

bool ColumnRecord::HasTarget(Task task) const {
  return task == Task::kSpalling ? spalled.has_value()
                                 : fire_resistance_min.has_value();
}

// --- schema ------------------------------------------------------------------

FeatureSchema FeatureSchema::ForTask(Task task) {
  FeatureSchema schema;
  schema.task_ = task;
  for (size_t i = 0; i < kNumFeatures; ++i) {
    const auto f = static_cast<Feature>(i);
    Range range = kFireResistanceRanges[i];
    if (task == Task::kSpalling) {
      switch (f) {
        case Feature::kW: range = kSpallingW; break;
        case Feature::kR: range = kSpallingR; break;
        case Feature::kFc: range = kSpallingFc; break;
        case Feature::kC: range = kSpallingC; break;
        case Feature::kP: range = kSpallingP; break;
        default: break;
      }
    }
    int n_categories = 0;
    if (f == Feature::kK) n_categories = 3;
    if (f == Feature::kE) n_categories = 5;
    if (f == Feature::kS) n_categories = 4;
    schema.specs_.push_back(FeatureSpec{
        f, std::string(kFeatureNames[i]), std::string(kUnits[i]),
        IsCategorical(f) ? FeatureKind::kCategorical : FeatureKind::kContinuous,
        range.min, range.max, IsSpallingFeature(f), true, n_categories});
  }
  schema.task_features_ = TaskFeatures(task);
  return schema;
}

std::string FeatureSchema::Canonical() const {
  std::ostringstream out;
  out << "task=" << TaskName(task_) << ";";
  for (const auto& s : specs_) {
    out << s.name << "|" << s.unit << "|"
        << (s.kind == FeatureKind::kContinuous ? "c" : "k") << "|"
        << FormatDouble(s.min) << "|" << FormatDouble(s.max) << "|"
        << s.required_spalling << s.required_fire_resistance << "|"
        << s.n_categories << ";";
  }
  out << "inputs=";
  for (Feature f : task_features_) out << FeatureName(f) << ",";
  return out.str();
}

std::string FeatureSchema::Fingerprint() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a(Canonical())));
  return buf;
}

// --- validation --------------------------------------------------------------

std::vector<Violation> ValidateRecord(const ColumnRecord& rec,
                                      const FeatureSchema& schema, bool strict,
                                      Purpose purpose) {
  std::vector<Violation> out;
  auto error = [&](std::string field, std::string msg) {
    out.push_back({std::move(field), std::move(msg), Severity::kError});
  };
  auto positive = [&](Feature f, double v) {
    if (!(v > 0.0)) error(std::string(FeatureName(f)), "must be > 0");
  };
  auto non_negative = [&](Feature f, double v) {
    if (!(v >= 0.0)) error(std::string(FeatureName(f)), "must be >= 0");
  };

  if (rec.id.empty()) error("id", "must not be empty");
  positive(Feature::kW, rec.width_mm);
  positive(Feature::kR, rec.steel_ratio_pct);
  positive(Feature::kFc, rec.fc_mpa);
  non_negative(Feature::kC, rec.cover_mm);
  non_negative(Feature::kEx, rec.ecc_x_mm);
  non_negative(Feature::kEy, rec.ecc_y_mm);
  non_negative(Feature::kP, rec.load_kn);
  if (rec.length_m) positive(Feature::kL, *rec.length_m);
  if (rec.fy_mpa) positive(Feature::kFy, *rec.fy_mpa);
  if (rec.exposed_faces < 1 || rec.exposed_faces > 4) {
    error("S", "exposed faces must be in 1..4");
  }
  if (rec.exposure.kind == ExposureKind::kOther && rec.exposure.label.empty()) {
    error("E", "OTHER exposure needs a label");
  }
  if (rec.fire_resistance_min && !(*rec.fire_resistance_min >= 0.0)) {
    error("FR", "fire resistance must be >= 0");
  }

  const Task task = schema.task();
  bool need_task_features = true;
  if (purpose == Purpose::kTraining) {
    if (!rec.fire_resistance_min && !rec.spalled) {
      error("target", "record carries neither FR nor SP");
    }
    need_task_features = rec.HasTarget(task);
  }
  if (need_task_features) {
    for (Feature f : schema.task_features()) {
      if (!rec.Value(f)) {
        error(std::string(FeatureName(f)), "required for task " +
                                               std::string(TaskName(task)));
      }
    }
  }

  if (strict) {
    for (const auto& spec : schema.specs()) {
      if (spec.kind != FeatureKind::kContinuous) continue;
      const auto v = rec.Value(spec.feature);
      if (v && (*v < spec.min || *v > spec.max)) {
        out.push_back({spec.name,
                       "value " + FormatDouble(*v) + " outside plausible range [" +
                           FormatDouble(spec.min) + ", " +
                           FormatDouble(spec.max) + "]",
                       Severity::kWarning});
      }
    }
  }
  return out;
}

bool HasErrors(std::span<const Violation> violations) {
  return std::any_of(violations.begin(), violations.end(), [](const auto& v) {
    return v.severity == Severity::kError;
  });
}

// --- dataset -----------------------------------------------------------------

std::vector<size_t> Dataset::Indices(SplitRole role) const {
  if (!has_split()) {
    throw Error(ErrorCode::kMissingSplit, "dataset has no train/test split");
  }
  std::vector<size_t> out;
  for (size_t i = 0; i < split.size(); ++i) {
    if (split[i] == role) out.push_back(i);
  }
  return out;
}

size_t Dataset::CountProvenance(Provenance p) const {
  return std::count_if(records.begin(), records.end(),
                       [p](const auto& r) { return r.provenance == p; });
}

// --- CSV ---------------------------------------------------------------------

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Dataset ParseCsv(std::istream& in, const FeatureSchema& schema,
                 const LoadOptions& options) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMissingHeader, "input is empty, header expected");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  if (Trim(line) != kCsvHeader) {
    throw Error(ErrorCode::kMissingHeader,
                "header must be exactly: " + std::string(kCsvHeader));
  }

  Dataset ds;
  ds.schema = schema;
  std::set<std::string> ids;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != kCsvColumns.size()) {
      throw DataError(ErrorCode::kBadNumeric, row, "",
                      "expected " + std::to_string(kCsvColumns.size()) +
                          " fields, found " + std::to_string(cells.size()));
    }
    auto number = [&](size_t col) {
      const auto v = ParseNumber(cells[col]);
      if (!v) {
        throw DataError(ErrorCode::kBadNumeric, row, std::string(kCsvColumns[col]),
                        "not a number: '" + cells[col] + "'");
      }
      return *v;
    };
    auto optional_number = [&](size_t col) -> std::optional<double> {
      if (cells[col].empty()) return std::nullopt;
      return number(col);
    };
    auto enumerated = [&](size_t col, auto parse) {
      try {
        return parse(cells[col]);
      } catch (const Error& e) {
        throw DataError(ErrorCode::kUnknownEnum, row,
                        std::string(kCsvColumns[col]), e.what());
      }
    };

    ColumnRecord rec;
    rec.id = cells[0];
    rec.provenance = enumerated(1, ParseProvenance);
    rec.width_mm = number(2);
    rec.steel_ratio_pct = number(3);
    rec.length_m = optional_number(4);
    rec.fc_mpa = number(5);
    rec.fy_mpa = optional_number(6);
    rec.restraint = enumerated(7, ParseRestraint);
    rec.cover_mm = number(8);
    rec.ecc_x_mm = number(9);
    rec.ecc_y_mm = number(10);
    rec.load_kn = number(11);
    rec.exposure = enumerated(12, ParseExposure);
    const double faces = number(13);
    if (faces != std::round(faces) || std::abs(faces) > 1e6) {
      throw DataError(ErrorCode::kBadNumeric, row, "S",
                      "exposed faces must be an integer");
    }
    rec.exposed_faces = static_cast<int>(faces);
    rec.fire_resistance_min = optional_number(14);
    if (cells[15] == "1") {
      rec.spalled = true;
    } else if (cells[15] == "0") {
      rec.spalled = false;
    } else if (!cells[15].empty()) {
      throw DataError(ErrorCode::kUnknownEnum, row, "SP",
                      "SP must be 1, 0 or empty");
    }

    if (!ids.insert(rec.id).second) {
      throw DataError(ErrorCode::kDuplicateId, row, "id",
                      "duplicate id '" + rec.id + "'");
    }
    const auto violations =
        ValidateRecord(rec, schema, options.strict, options.purpose);
    for (const auto& v : violations) {
      if (v.severity == Severity::kError) {
        throw DataError(ErrorCode::kInvalidRecord, row, v.field, v.message);
      }
      ds.warnings.push_back("row " + std::to_string(row) + ", " + v.field +
                            ": " + v.message);
    }
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

Dataset LoadCsv(const std::string& path, const FeatureSchema& schema,
                const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ParseCsv(in, schema, options);
}

void WriteCsv(std::span<const ColumnRecord> records, std::ostream& out) {
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.id << "," << ProvenanceName(r.provenance) << ","
        << FormatDouble(r.width_mm) << "," << FormatDouble(r.steel_ratio_pct)
        << "," << opt(r.length_m) << "," << FormatDouble(r.fc_mpa) << ","
        << opt(r.fy_mpa) << "," << RestraintName(r.restraint) << ","
        << FormatDouble(r.cover_mm) << "," << FormatDouble(r.ecc_x_mm) << ","
        << FormatDouble(r.ecc_y_mm) << "," << FormatDouble(r.load_kn) << ","
        << ExposureName(r.exposure) << "," << r.exposed_faces << ","
        << opt(r.fire_resistance_min) << ","
        << (r.spalled ? (*r.spalled ? "1" : "0") : "") << "\n";
  }
}

void WriteCsv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  WriteCsv(ds.records, out);
}

// --- statistics --------------------------------------------------------------

StatsRow ComputeStats(std::span<const double> values) {
  const size_t n = values.size();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "statistics need at least 2 values, got " + std::to_string(n));
  }
  StatsRow row;
  row.n = n;
  row.min = *std::min_element(values.begin(), values.end());
  row.max = *std::max_element(values.begin(), values.end());
  row.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - row.mean) * (v - row.mean);
  row.std = std::sqrt(ss / (n - 1));
  // Guard against rounding pushing the mean just outside [min, max].
  row.mean = std::clamp(row.mean, row.min, row.max);
  if (n < 3 || row.std == 0.0) {
    row.skewness = 0.0;
    row.skewness_defined = false;
  } else {
    double cubes = 0.0;
    for (double v : values) {
      const double z = (v - row.mean) / row.std;
      cubes += z * z * z;
    }
    const double nd = static_cast<double>(n);
    row.skewness = nd / ((nd - 1.0) * (nd - 2.0)) * cubes;
  }
  return row;
}

std::vector<StatsRow> Summarize(const Dataset& ds, bool group_by_provenance) {
  std::vector<std::pair<std::string, std::vector<const ColumnRecord*>>> groups;
  if (group_by_provenance) {
    for (Provenance p : {Provenance::kReal, Provenance::kSynthetic,
                         Provenance::kAugmented}) {
      std::vector<const ColumnRecord*> members;
      for (const auto& r : ds.records) {
        if (r.provenance == p) members.push_back(&r);
      }
      if (!members.empty()) {
        groups.emplace_back(std::string(ProvenanceName(p)), std::move(members));
      }
    }
  }
  {
    std::vector<const ColumnRecord*> all;
    for (const auto& r : ds.records) all.push_back(&r);
    groups.emplace_back("all", std::move(all));
  }

  std::vector<StatsRow> rows;
  for (const auto& [group, members] : groups) {
    if (members.size() < 2) {
      throw Error(ErrorCode::kInsufficientData,
                  "group '" + group + "' has fewer than 2 records");
    }
    auto emit = [&](const std::string& name, auto getter) {
      std::vector<double> values;
      for (const auto* r : members) {
        if (const std::optional<double> v = getter(*r)) values.push_back(*v);
      }
      if (values.empty()) return;
      if (values.size() < 2) {
        throw Error(ErrorCode::kInsufficientData,
                    "feature " + name + " in group '" + group +
                        "' has fewer than 2 values");
      }
      StatsRow row = ComputeStats(values);
      row.feature = name;
      row.group = group;
      rows.push_back(std::move(row));
    };
    for (Feature f : ds.schema.task_features()) {
      if (ds.schema.spec(f).kind != FeatureKind::kContinuous) continue;
      emit(std::string(FeatureName(f)),
           [f](const ColumnRecord& r) { return r.Value(f); });
    }
    emit("FR", [](const ColumnRecord& r) { return r.fire_resistance_min; });
  }
  return rows;
}

Dataset FilterForTask(const Dataset& ds, Task task) {
  Dataset out;
  out.schema = FeatureSchema::ForTask(task);
  out.seed = ds.seed;
  for (size_t i = 0; i < ds.records.size(); ++i) {
    if (!ds.records[i].HasTarget(task)) continue;
    out.records.push_back(ds.records[i]);
    if (ds.has_split()) out.split.push_back(ds.split[i]);
  }
  return out;
}

Dataset SplitTrainTest(const Dataset& ds, double fraction, uint64_t seed,
                       std::optional<Task> stratify_on) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "train fraction must lie strictly between 0 and 1");
  }
  const size_t n = ds.records.size();
  std::map<int, std::vector<size_t>> strata;
  for (size_t i = 0; i < n; ++i) {
    int key = 0;
    if (stratify_on) {
      const auto& r = ds.records[i];
      if (!r.HasTarget(*stratify_on)) {
        throw Error(ErrorCode::kMissingTarget,
                    "record '" + r.id + "' lacks the stratification target");
      }
      key = *stratify_on == Task::kSpalling
                ? static_cast<int>(*r.spalled)
                : static_cast<int>(ClassifyRating(*r.fire_resistance_min));
    }
    strata[key].push_back(i);
  }

  Dataset out = ds;
  out.seed = seed;
  out.split.assign(n, SplitRole::kTest);
  uint64_t stream = 0;
  for (auto& [key, members] : strata) {
    Rng rng(DeriveSeed(seed, stream++));
    rng.Shuffle(std::span<size_t>(members));
    const auto n_train = static_cast<size_t>(
        std::llround(fraction * static_cast<double>(members.size())));
    for (size_t j = 0; j < n_train; ++j) out.split[members[j]] = SplitRole::kTrain;
  }
  return out;
}

// --- encoding ----------------------------------------------------------------

std::vector<double> EncodeTree(const ColumnRecord& rec, Task task) {
  std::vector<double> out;
  for (Feature f : TaskFeatures(task)) {
    const auto v = rec.Value(f);
    if (!v) {
      throw Error(ErrorCode::kMissingFeature,
                  "record '" + rec.id + "' lacks feature " +
                      std::string(FeatureName(f)));
    }
    out.push_back(*v);
  }
  return out;
}

ColumnRecord DecodeTree(std::span<const double> encoded, Task task) {
  const auto features = TaskFeatures(task);
  if (encoded.size() != features.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "encoded width mismatch");
  }
  ColumnRecord rec;
  for (size_t i = 0; i < features.size(); ++i) rec.SetValue(features[i], encoded[i]);
  return rec;
}

NeuralEncoder::NeuralEncoder(const FeatureSchema& schema)
    : task_features_(schema.task_features()) {
  for (Feature f : task_features_) {
    const auto& spec = schema.spec(f);
    lo_.push_back(spec.min);
    hi_.push_back(spec.max);
    width_ += (f == Feature::kK || f == Feature::kE) ? spec.n_categories : 1;
  }
}

void NeuralEncoder::Encode(std::span<const double> tree_encoded,
                           std::span<double> out) const {
  if (tree_encoded.size() != task_features_.size() || out.size() != width_) {
    throw Error(ErrorCode::kDimensionMismatch, "neural encoding width mismatch");
  }
  size_t k = 0;
  for (size_t i = 0; i < task_features_.size(); ++i) {
    const Feature f = task_features_[i];
    const double v = tree_encoded[i];
    if (f == Feature::kK || f == Feature::kE) {
      const size_t n = f == Feature::kK ? 3 : 5;
      for (size_t c = 0; c < n; ++c) out[k + c] = (v == static_cast<double>(c)) ? 1.0 : 0.0;
      k += n;
    } else {
      out[k++] = (v - lo_[i]) / (hi_[i] - lo_[i]);
    }
  }
}

std::vector<double> NeuralEncoder::Encode(std::span<const double> tree_encoded) const {
  std::vector<double> out(width_);
  Encode(tree_encoded, out);
  return out;
}

Matrix NeuralEncoder::EncodeMatrix(const Matrix& tree_encoded) const {
  Matrix out(tree_encoded.rows(), width_);
  for (size_t r = 0; r < tree_encoded.rows(); ++r) {
    Encode(tree_encoded.row(r), out.row(r));
  }
  return out;
}

std::vector<std::string> NeuralEncoder::ColumnNames() const {
  std::vector<std::string> names;
  for (Feature f : task_features_) {
    if (f == Feature::kK) {
      for (auto k : {Restraint::kFixedFixed, Restraint::kFixedPinned,
                     Restraint::kPinnedPinned}) {
        names.push_back("K=" + std::string(RestraintName(k)));
      }
    } else if (f == Feature::kE) {
      for (int e = 0; e < 5; ++e) {
        FireExposure x{static_cast<ExposureKind>(e), ""};
        names.push_back("E=" + (e == 4 ? std::string("OTHER")
                                       : ExposureName(x)));
      }
    } else {
      names.emplace_back(FeatureName(f));
    }
  }
  return names;
}

std::vector<double> EncodeNeural(const ColumnRecord& rec,
                                 const FeatureSchema& schema) {
  return NeuralEncoder(schema).Encode(EncodeTree(rec, schema.task()));
}

Matrix TreeMatrix(const Dataset& ds, Task task, std::span<const size_t> rows) {
  Matrix out(rows.size(), TaskFeatures(task).size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto v = EncodeTree(ds.records.at(rows[i]), task);
    std::copy(v.begin(), v.end(), out.row(i).begin());
  }
  return out;
}

std::vector<double> Targets(const Dataset& ds, Task task,
                            std::span<const size_t> rows) {
  std::vector<double> y;
  y.reserve(rows.size());
  for (size_t i : rows) {
    const auto& r = ds.records.at(i);
    if (!r.HasTarget(task)) {
      throw Error(ErrorCode::kMissingTarget,
                  "record '" + r.id + "' lacks the " +
                      std::string(TaskName(task)) + " target");
    }
    y.push_back(task == Task::kSpalling ? (*r.spalled ? 1.0 : 0.0)
                                        : *r.fire_resistance_min);
  }
  return y;
}

}  // namespace pyro
