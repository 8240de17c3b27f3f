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


#ifndef PYRO_CODAL_H_
#define PYRO_CODAL_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pyro/dataset.h"
#include "pyro/ensemble.h"

namespace pyro {

struct Ec2Params {
  double mu_fi = 0.5;
  double omega = 0.0;          // mechanical reinforcement ratio
  double alpha_cc = 1.0;
  double axis_distance_mm = 40.0;
  double effective_length_m = 3.0;
  double b_prime_mm = 300.0;
  int n_bars = 4;
};

struct Ec2Result {
  double minutes = 0.0;
  bool length_clamped = false;  // effective length below 2 m was raised to 2 m
  double r_load = 0.0;
  double r_axis = 0.0;
  double r_length = 0.0;
  double r_section = 0.0;
  double r_bars = 0.0;
};

// Eurocode 2 column formula. A non-positive term sum gives 0 minutes.
// Throws OutOfValidityRange outside 25 <= a <= 80 mm or above 6 m.
Ec2Result Ec2FireResistance(const Ec2Params& p);

// R = k fc^e_fc B^e_B D^e_D / (scale N^e_N Le^e_Le), N in kN, lengths in mm.
struct As3600Profile {
  std::string name = "literal";
  double e_fc = 1.3;
  double e_b = 3.3;
  double e_d = 1.8;
  double e_n = 6.5;  // printed as N^5 x N^1.5
  double e_le = 0.9;
  double scale = 1.0;

  static As3600Profile Literal() { return {}; }
  // Reads the printed N^5 as the constant 10^5.
  static As3600Profile Corrected() { return {"corrected", 1.3, 3.3, 1.8, 1.5, 0.9, 1e5}; }
};

struct As3600Params {
  double k = 1.47;
  double fc_mpa = 40.0;
  double b_mm = 300.0;  // least dimension
  double d_mm = 300.0;  // greatest dimension
  double n_kn = 1000.0;
  double le_mm = 3000.0;
};

// 1.47 below 35 mm cover, 1.48 from 35 mm.
double As3600K(double cover_mm);

// Throws NonPositiveInput.
double As3600FireResistance(const As3600Params& p,
                            const As3600Profile& profile = As3600Profile::Literal());

// Record to formula inputs. Square sections: b = h = W.
struct CodalMapping {
  double mu_fi = 0.5;
  bool mu_fi_defaulted = true;
  double alpha_cc = 1.0;
  int n_bars = 4;
  double axis_offset_mm = 10.0;  // a = C + offset
  double length_factor_ff = 0.5;
  double length_factor_fp = 0.7;
  double length_factor_pp = 1.0;
  // Leave records the formula cannot take out of the comparison (noted in
  // the report) instead of failing.
  bool skip_unmappable = false;
};

double EffectiveLengthFactor(Restraint k, const CodalMapping& mapping);
// Throws MappingFailure naming the record.
Ec2Params MapEc2(const ColumnRecord& rec, const CodalMapping& mapping);
As3600Params MapAs3600(const ColumnRecord& rec, const CodalMapping& mapping);

enum class CodalMethod { kEc2, kAs3600, kEnsemble };
std::string_view CodalMethodName(CodalMethod m);
std::optional<CodalMethod> CodalMethodFromName(std::string_view name);

struct CodalRow {
  std::string id;
  double observed = 0.0;
  double predicted = 0.0;
  double residual = 0.0;  // observed - predicted
};

struct CodalReport {
  CodalMethod method = CodalMethod::kEc2;
  std::string profile;
  std::vector<CodalRow> rows;
  std::vector<std::string> skipped;  // ids left out under skip_unmappable
  std::optional<double> r;   // empty when a side has no variance
  std::optional<double> r2;
  std::vector<std::string> notes;
};

// `ens` is required for kEnsemble.
CodalReport CodalCompare(const Dataset& ds, CodalMethod method,
                         const CodalMapping& mapping = {},
                         const As3600Profile& profile = As3600Profile::Literal(),
                         const EnsembleModel* ens = nullptr);

}  // namespace pyro

#endif  // PYRO_CODAL_H_
