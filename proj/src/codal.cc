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

#include "pyro/codal.h"

#include <cmath>

#include "pyro/error.h"
#include "pyro/metrics.h"

namespace pyro {

Ec2Result Ec2FireResistance(const Ec2Params& p) {
  if (p.axis_distance_mm < 25.0 || p.axis_distance_mm > 80.0) {
    throw Error(ErrorCode::kOutOfValidityRange,
                "axis distance " + FormatDouble(p.axis_distance_mm) +
                    " mm outside [25, 80]");
  }
  if (!(p.effective_length_m > 0.0) || p.effective_length_m > 6.0) {
    throw Error(ErrorCode::kOutOfValidityRange,
                "effective length " + FormatDouble(p.effective_length_m) +
                    " m outside (0, 6]");
  }
  if (p.mu_fi < 0.0 || p.omega < 0.0 || !(p.alpha_cc > 0.0) || !(p.b_prime_mm > 0.0) ||
      p.n_bars < 4) {
    throw Error(ErrorCode::kOutOfValidityRange,
                "load level, reinforcement ratio, alpha_cc, b' or bar count out of range");
  }
  Ec2Result r;
  double l = p.effective_length_m;
  if (l < 2.0) {
    l = 2.0;
    r.length_clamped = true;
  }
  r.r_load = 83.0 * (1.0 - p.mu_fi * (1.0 + p.omega) / (0.85 / p.alpha_cc + p.omega));
  r.r_axis = 1.6 * (p.axis_distance_mm - 30.0);
  r.r_length = 9.6 * (5.0 - l);
  r.r_section = 0.09 * p.b_prime_mm;
  r.r_bars = p.n_bars == 4 ? 0.0 : 12.0;
  const double sum = r.r_load + r.r_axis + r.r_length + r.r_section + r.r_bars;
  r.minutes = sum > 0.0 ? 120.0 * std::pow(sum / 120.0, 1.8) : 0.0;
  return r;
}

double As3600K(double cover_mm) { return cover_mm < 35.0 ? 1.47 : 1.48; }

double As3600FireResistance(const As3600Params& p, const As3600Profile& profile) {
  if (!(p.k > 0.0 && p.fc_mpa > 0.0 && p.b_mm > 0.0 && p.d_mm > 0.0 && p.n_kn > 0.0 &&
        p.le_mm > 0.0 && profile.scale > 0.0)) {
    throw Error(ErrorCode::kNonPositiveInput, "AS3600 inputs must all be positive");
  }
  if (p.b_mm > p.d_mm) {
    throw Error(ErrorCode::kOutOfValidityRange, "B must not exceed D");
  }
  return p.k * std::pow(p.fc_mpa, profile.e_fc) * std::pow(p.b_mm, profile.e_b) *
         std::pow(p.d_mm, profile.e_d) /
         (profile.scale * std::pow(p.n_kn, profile.e_n) * std::pow(p.le_mm, profile.e_le));
}

double EffectiveLengthFactor(Restraint k, const CodalMapping& mapping) {
  switch (k) {
    case Restraint::kFixedFixed: return mapping.length_factor_ff;
    case Restraint::kFixedPinned: return mapping.length_factor_fp;
    case Restraint::kPinnedPinned: return mapping.length_factor_pp;
  }
  return mapping.length_factor_pp;
}

Ec2Params MapEc2(const ColumnRecord& rec, const CodalMapping& mapping) {
  if (!rec.length_m || !rec.fy_mpa) {
    throw Error(ErrorCode::kMappingFailure,
                "record '" + rec.id + "' lacks L or fy needed by the Eurocode 2 mapping");
  }
  Ec2Params p;
  p.mu_fi = mapping.mu_fi;
  p.omega = rec.steel_ratio_pct / 100.0 * *rec.fy_mpa / rec.fc_mpa;
  p.alpha_cc = mapping.alpha_cc;
  p.axis_distance_mm = rec.cover_mm + mapping.axis_offset_mm;
  p.effective_length_m = EffectiveLengthFactor(rec.restraint, mapping) * *rec.length_m;
  // 2 Ac / (b + h) reduces to W for a square section.
  p.b_prime_mm = rec.width_mm;
  p.n_bars = mapping.n_bars;
  return p;
}

As3600Params MapAs3600(const ColumnRecord& rec, const CodalMapping& mapping) {
  if (!rec.length_m) {
    throw Error(ErrorCode::kMappingFailure,
                "record '" + rec.id + "' lacks L needed by the AS3600 mapping");
  }
  if (!(rec.load_kn > 0.0)) {
    throw Error(ErrorCode::kMappingFailure,
                "record '" + rec.id + "' has no axial load for the AS3600 mapping");
  }
  As3600Params p;
  p.k = As3600K(rec.cover_mm);
  p.fc_mpa = rec.fc_mpa;
  p.b_mm = rec.width_mm;
  p.d_mm = rec.width_mm;
  p.n_kn = rec.load_kn;
  p.le_mm = EffectiveLengthFactor(rec.restraint, mapping) * *rec.length_m * 1000.0;
  return p;
}

std::string_view CodalMethodName(CodalMethod m) {
  switch (m) {
    case CodalMethod::kEc2: return "EC2";
    case CodalMethod::kAs3600: return "AS3600";
    case CodalMethod::kEnsemble: return "Ensemble";
  }
  return "unknown";
}

std::optional<CodalMethod> CodalMethodFromName(std::string_view name) {
  for (auto m : {CodalMethod::kEc2, CodalMethod::kAs3600, CodalMethod::kEnsemble}) {
    std::string lower(CodalMethodName(m));
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == CodalMethodName(m) || name == lower) return m;
  }
  return std::nullopt;
}

CodalReport CodalCompare(const Dataset& ds, CodalMethod method, const CodalMapping& mapping,
                         const As3600Profile& profile, const EnsembleModel* ens) {
  if (method == CodalMethod::kEnsemble &&
      (ens == nullptr || ens->task == Task::kSpalling || !ens->fitted())) {
    throw Error(ErrorCode::kUnfittedModel,
                "ensemble comparison needs a fitted fire-resistance model");
  }
  CodalReport report;
  report.method = method;
  report.profile = method == CodalMethod::kAs3600 ? profile.name
                   : method == CodalMethod::kEc2 ? "ec2-default-mapping"
                                                 : "ensemble";
  if (method == CodalMethod::kEc2 && mapping.mu_fi_defaulted) {
    report.notes.push_back("mu_fi not supplied; defaulted to " + FormatDouble(mapping.mu_fi));
  }
  size_t clamped = 0;
  for (const auto& rec : ds.records) {
    if (!rec.fire_resistance_min) {
      throw Error(ErrorCode::kMissingTarget, "record '" + rec.id + "' lacks FR");
    }
    CodalRow row;
    row.id = rec.id;
    row.observed = *rec.fire_resistance_min;
    try {
      switch (method) {
        case CodalMethod::kEc2: {
          const auto r = Ec2FireResistance(MapEc2(rec, mapping));
          clamped += r.length_clamped ? 1 : 0;
          row.predicted = r.minutes;
          break;
        }
        case CodalMethod::kAs3600:
          row.predicted = As3600FireResistance(MapAs3600(rec, mapping), profile);
          break;
        case CodalMethod::kEnsemble:
          row.predicted = Predict(*ens, rec).value;
          break;
      }
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      if (mapping.skip_unmappable) {
        report.skipped.push_back(rec.id);
        continue;
      }
      throw Error(ErrorCode::kMappingFailure, "record '" + rec.id + "': " + e.what());
    }
    row.residual = row.observed - row.predicted;
    report.rows.push_back(row);
  }
  if (clamped > 0) {
    report.notes.push_back(std::to_string(clamped) +
                           " effective lengths below 2 m evaluated at 2 m");
  }
  if (!report.skipped.empty()) {
    report.notes.push_back(std::to_string(report.skipped.size()) +
                           " records outside the formula's domain were skipped");
  }
  if (report.rows.size() >= 2) {
    std::vector<double> a, p;
    for (const auto& row : report.rows) {
      a.push_back(row.observed);
      p.push_back(row.predicted);
    }
    try {
      report.r = PearsonR(a, p);
    } catch (const Error&) {
    }
    try {
      report.r2 = RSquared(a, p);
    } catch (const Error&) {
    }
  }
  return report;
}

}  // namespace pyro
