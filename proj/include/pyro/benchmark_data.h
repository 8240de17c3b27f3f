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


#ifndef PYRO_BENCHMARK_DATA_H_
#define PYRO_BENCHMARK_DATA_H_

#include <array>
#include <cstdint>

#include "pyro/dataset.h"
#include "pyro/rng.h"

namespace pyro {

// Target moments and support of one continuous feature.
struct Marginal {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;
  double skewness = 0.0;
};

// Spall logit = intercept + sum of coefficients times standardized features,
// with z = (value - marginal mean) / marginal std.
struct SpallingRule {
  double intercept = -0.5;
  double fc = 3.0;
  double w = 1.8;
  double c = -2.25;
  double p = 0.4;
  double r = 0.3;
};

// FR = base + sum of coefficients times standardized features + categorical
// offsets + N(0, noise_std), clamped to [min_minutes, max_minutes].
struct FireRule {
  double base = 160.0;
  double w = 55.0;
  double c = 25.0;
  double p = -45.0;
  double ex = -20.0;
  double ey = -8.0;
  double fc = 5.0;
  std::array<double, 3> restraint = {25.0, 0.0, -25.0};  // FF, FP, PP
  std::array<double, 5> exposure = {0.0, 0.0, -20.0, 10.0, 0.0};
  double per_missing_face = 10.0;  // times (4 - S)
  double noise_std = 20.0;
  double min_minutes = 20.0;
  double max_minutes = 636.0;
};

struct BenchmarkSpec {
  size_t n = 1000;
  uint64_t seed = 0;
  // Continuous features in schema order: W, r, L, fc, fy, C, ex, ey, P.
  std::array<Marginal, 9> marginals = {{
      {200.0, 914.0, 324.3, 99.2, 1.9},
      {0.9, 4.4, 2.1, 0.6, 0.6},
      {2.1, 5.8, 4.0, 0.7, 0.3},
      {24.0, 138.0, 49.3, 28.1, 1.4},
      {354.0, 591.0, 449.4, 60.1, 0.7},
      {23.0, 64.0, 40.2, 8.7, -0.6},
      {0.0, 150.0, 15.8, 29.7, 2.9},
      {0.0, 75.0, 2.0, 10.1, 5.3},
      {0.0, 5373.0, 1204.8, 1031.6, 1.7},
  }};
  std::array<double, 3> restraint_probs = {0.3, 0.2, 0.5};
  std::array<double, 4> exposure_probs = {0.45, 0.35, 0.1, 0.1};
  std::array<double, 4> faces_probs = {0.03, 0.02, 0.1, 0.85};  // S = 1..4
  SpallingRule spalling;
  FireRule fire;
};

inline constexpr size_t kMinBenchmarkRecords = 50;

// Shifted-gamma draw matched to the marginal's mean, std and skewness (the
// gamma is mirrored for negative skew, normal when |skew| < 0.05), clamped
// to [min, max].
double DrawMarginal(Rng& rng, const Marginal& m);

// Real-provenance records carrying both targets. Throws InfeasibleSpec below
// 50 records or for inconsistent marginals.
Dataset GenerateBenchmark(const BenchmarkSpec& spec);

}  // namespace pyro

#endif  // PYRO_BENCHMARK_DATA_H_
