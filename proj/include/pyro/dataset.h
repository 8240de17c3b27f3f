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

#ifndef PYRO_DATASET_H_
#define PYRO_DATASET_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pyro/matrix.h"

namespace pyro {

enum class Provenance { kReal, kSynthetic, kAugmented };
enum class Restraint { kFixedFixed = 0, kFixedPinned = 1, kPinnedPinned = 2 };

// Declared order doubles as the tree encoding of the exposure feature. Every
// Other(label) maps to the same code; the label is kept on the record only.
enum class ExposureKind {
  kAstmE119 = 0,
  kIso834 = 1,
  kHydrocarbon = 2,
  kDesign = 3,
  kOther = 4,
};

struct FireExposure {
  ExposureKind kind = ExposureKind::kAstmE119;
  std::string label;  // only meaningful for kOther

  bool operator==(const FireExposure&) const = default;
};

enum class Task { kSpalling, kFireResistance, kRatingClass };

// The twelve input features, in schema order.
enum class Feature {
  kW = 0,   // column width, mm
  kR,       // steel reinforcement ratio, %
  kL,       // length, m
  kFc,      // concrete compressive strength, MPa
  kFy,      // steel yield strength, MPa
  kK,       // restraint
  kC,       // concrete cover, mm
  kEx,      // load eccentricity x, mm
  kEy,      // load eccentricity y, mm
  kP,       // applied load, kN
  kE,       // fire exposure
  kS,       // exposed faces
};
inline constexpr size_t kNumFeatures = 12;

struct ColumnRecord {
  std::string id;
  Provenance provenance = Provenance::kReal;
  double width_mm = 0.0;
  double steel_ratio_pct = 0.0;
  std::optional<double> length_m;
  double fc_mpa = 0.0;
  std::optional<double> fy_mpa;
  Restraint restraint = Restraint::kFixedFixed;
  double cover_mm = 0.0;
  double ecc_x_mm = 0.0;
  double ecc_y_mm = 0.0;
  double load_kn = 0.0;
  FireExposure exposure;
  int exposed_faces = 4;
  std::optional<double> fire_resistance_min;
  std::optional<bool> spalled;

  // Numeric value of a feature (categorical codes for K, E, S); empty when an
  // optional feature is absent.
  std::optional<double> Value(Feature f) const;
  // Sets a feature from its numeric value; categorical codes must be valid.
  void SetValue(Feature f, double value);

  bool HasTarget(Task task) const;

  bool operator==(const ColumnRecord&) const = default;
};

enum class FeatureKind { kContinuous, kCategorical };

struct FeatureSpec {
  Feature feature;
  std::string name;
  std::string unit;
  FeatureKind kind;
  double min;  // plausible range, from the collected-database statistics
  double max;
  bool required_spalling;
  bool required_fire_resistance;
  int n_categories;  // categoricals only
};

// Per-task feature schema. Plausible ranges follow the statistics of the
// partition that trains the task, so the spalling schema admits the wider
// reinforcement-ratio range of the spalling corpus.
class FeatureSchema {
 public:
  static FeatureSchema ForTask(Task task);

  Task task() const { return task_; }
  const std::vector<FeatureSpec>& specs() const { return specs_; }
  const FeatureSpec& spec(Feature f) const {
    return specs_[static_cast<size_t>(f)];
  }

  // Features the task's models consume, in schema order.
  const std::vector<Feature>& task_features() const { return task_features_; }

  // Canonical text form and its FNV-1a 64-bit hash (hex).
  std::string Canonical() const;
  std::string Fingerprint() const;

 private:
  Task task_ = Task::kFireResistance;
  std::vector<FeatureSpec> specs_;
  std::vector<Feature> task_features_;
};

std::string_view FeatureName(Feature f);
std::optional<Feature> FeatureFromName(std::string_view name);
std::string_view TaskName(Task task);
std::optional<Task> TaskFromName(std::string_view name);
std::vector<Feature> TaskFeatures(Task task);

std::string_view ProvenanceName(Provenance p);
Provenance ParseProvenance(std::string_view text);
std::string_view RestraintName(Restraint k);
Restraint ParseRestraint(std::string_view text);
std::string ExposureName(const FireExposure& e);
FireExposure ParseExposure(std::string_view text);

enum class Severity { kError, kWarning };

struct Violation {
  std::string field;
  std::string message;
  Severity severity;
};

// kTraining: at least one target must be present, and task features are only
// required on records carrying the schema task's target. kPrediction: task
// features are always required; targets are ignored.
enum class Purpose { kTraining, kPrediction };

std::vector<Violation> ValidateRecord(const ColumnRecord& rec,
                                      const FeatureSchema& schema, bool strict,
                                      Purpose purpose = Purpose::kTraining);

bool HasErrors(std::span<const Violation> violations);

enum class SplitRole { kTrain, kTest };

struct Dataset {
  std::vector<ColumnRecord> records;
  FeatureSchema schema = FeatureSchema::ForTask(Task::kFireResistance);
  std::vector<SplitRole> split;  // empty, or one role per record
  uint64_t seed = 0;
  std::vector<std::string> warnings;  // strict-mode range warnings

  bool has_split() const { return !split.empty(); }
  std::vector<size_t> Indices(SplitRole role) const;
  size_t CountProvenance(Provenance p) const;
};

inline constexpr std::string_view kCsvHeader =
    "id,provenance,W_mm,r_pct,L_m,fc_MPa,fy_MPa,K,C_mm,ex_mm,ey_mm,P_kN,E,S,"
    "FR_min,SP";

struct LoadOptions {
  bool strict = false;
  Purpose purpose = Purpose::kTraining;
};

Dataset LoadCsv(const std::string& path, const FeatureSchema& schema,
                const LoadOptions& options = {});
Dataset ParseCsv(std::istream& in, const FeatureSchema& schema,
                 const LoadOptions& options = {});
void WriteCsv(const Dataset& ds, const std::string& path);
void WriteCsv(std::span<const ColumnRecord> records, std::ostream& out);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);

struct StatsRow {
  std::string feature;
  std::string group;  // provenance name, or "all"
  size_t n = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;       // sample standard deviation, n-1 denominator
  double skewness = 0.0;  // adjusted sample skewness
  bool skewness_defined = true;
};

// Moments of one sample; throws InsufficientData below two values.
StatsRow ComputeStats(std::span<const double> values);

// Continuous task features plus the fire-resistance target, overall or per
// provenance group (followed by "all").
std::vector<StatsRow> Summarize(const Dataset& ds, bool group_by_provenance);

// Records carrying the target of `task`, schema switched to that task.
Dataset FilterForTask(const Dataset& ds, Task task);

// Deterministic train/test assignment. With stratify_on, class proportions
// (spalled / not spalled, or rating class) are kept per class.
Dataset SplitTrainTest(const Dataset& ds, double fraction, uint64_t seed,
                       std::optional<Task> stratify_on = std::nullopt);

// Tree encoding: task features in schema order, categoricals as integer
// codes (K: FF=0, FP=1, PP=2; E by declared order; S as its integer value).
std::vector<double> EncodeTree(const ColumnRecord& rec, Task task);
// Inverse of EncodeTree on the task features; other fields keep defaults.
ColumnRecord DecodeTree(std::span<const double> encoded, Task task);

// Neural encoding built from a tree-encoded vector: continuous features and
// S min-max scaled with schema ranges, then one-hot K and E.
class NeuralEncoder {
 public:
  explicit NeuralEncoder(const FeatureSchema& schema);

  size_t input_width() const { return task_features_.size(); }
  size_t output_width() const { return width_; }

  void Encode(std::span<const double> tree_encoded, std::span<double> out) const;
  std::vector<double> Encode(std::span<const double> tree_encoded) const;
  Matrix EncodeMatrix(const Matrix& tree_encoded) const;

  // Column names of the neural encoding, e.g. "W", "K=FF".
  std::vector<std::string> ColumnNames() const;

 private:
  std::vector<Feature> task_features_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  size_t width_ = 0;
};

std::vector<double> EncodeNeural(const ColumnRecord& rec,
                                 const FeatureSchema& schema);

Matrix TreeMatrix(const Dataset& ds, Task task, std::span<const size_t> rows);
// Targets: spalling as 0/1, fire resistance and rating class as minutes.
std::vector<double> Targets(const Dataset& ds, Task task,
                            std::span<const size_t> rows);

}  // namespace pyro

#endif  // PYRO_DATASET_H_
