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

#include "pyro/benchmark_data.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pyro/error.h"

namespace pyro {
namespace {

enum Column { kW, kR, kL, kFc, kFy, kC, kEx, kEy, kP };

template <size_t N>
size_t DrawCategory(Rng& rng, const std::array<double, N>& probs) {
  double u = rng.Uniform();
  for (size_t i = 0; i + 1 < N; ++i) {
    if (u < probs[i]) return i;
    u -= probs[i];
  }
  return N - 1;
}

template <size_t N>
void CheckProbabilities(const std::array<double, N>& probs, const char* name) {
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw Error(ErrorCode::kInfeasibleSpec, std::string(name) + " has a negative weight");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInfeasibleSpec, std::string(name) + " weights do not sum to 1");
  }
}

}  // namespace

double DrawMarginal(Rng& rng, const Marginal& m) {
  double x;
  if (std::abs(m.skewness) < 0.05) {
    x = m.mean + m.std * rng.Normal();
  } else {
    const double skew = std::abs(m.skewness);
    const double shape = 4.0 / (skew * skew);
    const double scale = m.std * skew / 2.0;
    const double g = (rng.Gamma(shape) - shape) * scale;
    x = m.mean + (m.skewness > 0.0 ? g : -g);
  }
  return std::clamp(x, m.min, m.max);
}

Dataset GenerateBenchmark(const BenchmarkSpec& spec) {
  if (spec.n < kMinBenchmarkRecords) {
    throw Error(ErrorCode::kInfeasibleSpec,
                "benchmark needs at least " + std::to_string(kMinBenchmarkRecords) +
                    " records, got " + std::to_string(spec.n));
  }
  for (const auto& m : spec.marginals) {
    if (!(m.min <= m.mean && m.mean <= m.max && m.std > 0.0)) {
      throw Error(ErrorCode::kInfeasibleSpec, "marginal mean outside its range or std <= 0");
    }
  }
  CheckProbabilities(spec.restraint_probs, "restraint");
  CheckProbabilities(spec.exposure_probs, "exposure");
  CheckProbabilities(spec.faces_probs, "exposed faces");

  // One stream per column so that editing one rule leaves the others intact.
  std::vector<Rng> streams;
  for (uint64_t s = 0; s < 14; ++s) streams.emplace_back(DeriveSeed(spec.seed, s));
  auto z = [&](Column c, double v) {
    return (v - spec.marginals[c].mean) / spec.marginals[c].std;
  };

  Dataset ds;
  ds.seed = spec.seed;
  ds.schema = FeatureSchema::ForTask(Task::kFireResistance);
  const auto& sp = spec.spalling;
  const auto& fr = spec.fire;
  for (size_t i = 0; i < spec.n; ++i) {
    std::array<double, 9> v{};
    for (size_t c = 0; c < v.size(); ++c) v[c] = DrawMarginal(streams[c], spec.marginals[c]);
    ColumnRecord rec;
    char id[16];
    std::snprintf(id, sizeof(id), "B%05zu", i + 1);
    rec.id = id;
    rec.provenance = Provenance::kReal;
    rec.width_mm = v[kW];
    rec.steel_ratio_pct = v[kR];
    rec.length_m = v[kL];
    rec.fc_mpa = v[kFc];
    rec.fy_mpa = v[kFy];
    rec.cover_mm = v[kC];
    rec.ecc_x_mm = v[kEx];
    rec.ecc_y_mm = v[kEy];
    rec.load_kn = v[kP];
    const size_t k = DrawCategory(streams[9], spec.restraint_probs);
    const size_t e = DrawCategory(streams[10], spec.exposure_probs);
    rec.restraint = static_cast<Restraint>(k);
    rec.exposure.kind = static_cast<ExposureKind>(e);
    rec.exposed_faces = static_cast<int>(DrawCategory(streams[11], spec.faces_probs)) + 1;

    const double logit = sp.intercept + sp.fc * z(kFc, v[kFc]) + sp.w * z(kW, v[kW]) +
                         sp.c * z(kC, v[kC]) + sp.p * z(kP, v[kP]) + sp.r * z(kR, v[kR]);
    const double p_spall = 1.0 / (1.0 + std::exp(-logit));
    rec.spalled = streams[12].Uniform() < p_spall;

    double minutes = fr.base + fr.w * z(kW, v[kW]) + fr.c * z(kC, v[kC]) +
                     fr.p * z(kP, v[kP]) + fr.ex * z(kEx, v[kEx]) + fr.ey * z(kEy, v[kEy]) +
                     fr.fc * z(kFc, v[kFc]) + fr.restraint[k] + fr.exposure[e] +
                     fr.per_missing_face * (4 - rec.exposed_faces) +
                     fr.noise_std * streams[13].Normal();
    rec.fire_resistance_min = std::clamp(minutes, fr.min_minutes, fr.max_minutes);
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

}  // namespace pyro
