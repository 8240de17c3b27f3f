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

// Toy models with known Shapley structure, and a permutation-averaging
// reference that shares no code with the library.

#ifndef PYRO_TESTS_SHAPLEY_CHECK_H_
#define PYRO_TESTS_SHAPLEY_CHECK_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pyro/explain.h"
#include "pyro/rng.h"

namespace pyro::testing {

inline Matrix RandomMatrix(size_t rows, size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) m(i, j) = rng.Normal();
  }
  return m;
}

inline std::vector<std::string> Names(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

// Average marginal contribution over every ordering of the features.
inline std::vector<double> PermutationShapley(const ModelFn& f,
                                              std::span<const double> x,
                                              const Matrix& bg) {
  const size_t n = x.size();
  std::map<std::vector<bool>, double> cache;
  auto value = [&](const std::vector<bool>& in) {
    auto it = cache.find(in);
    if (it != cache.end()) return it->second;
    double total = 0.0;
    std::vector<double> z(n);
    for (size_t r = 0; r < bg.rows(); ++r) {
      for (size_t j = 0; j < n; ++j) z[j] = in[j] ? x[j] : bg(r, j);
      total += f(z);
    }
    const double v = total / static_cast<double>(bg.rows());
    cache[in] = v;
    return v;
  };
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(n, 0.0);
  size_t count = 0;
  do {
    std::vector<bool> in(n, false);
    double prev = value(in);
    for (size_t j : order) {
      in[j] = true;
      const double cur = value(in);
      phi[j] += cur - prev;
      prev = cur;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& p : phi) p /= static_cast<double>(count);
  return phi;
}

// A nonlinear model over the first `n` inputs that ignores input n - 1.
inline ModelFn ToyModel(size_t n) {
  return [n](std::span<const double> z) {
    double out = 0.3;
    for (size_t j = 0; j + 1 < n; ++j) out += (j + 1) * 0.5 * z[j];
    out += std::sin(z[0] * z[1]);
    if (n > 4) out += z[2] * z[2] * z[3];
    if (n > 6) out += std::max(0.0, z[4] - z[5]);
    return out;
  };
}

struct ShapleyCheckResult {
  double efficiency = 0.0;   // worst |sum phi - (f(x) - baseline)|
  double dummy = 0.0;        // worst |phi| of the ignored feature
  double brute_force = 0.0;  // worst gap to permutation averaging
  double symmetry = 0.0;     // worst |phi_0 - phi_1| on a symmetric model
};

inline ShapleyCheckResult RunShapleyChecks(Exec exec = Exec::kParallel) {
  ShapleyCheckResult out;
  Rng rng(31);
  for (size_t n = 3; n <= 8; ++n) {
    const ModelFn f = ToyModel(n);
    const Matrix bg = RandomMatrix(12, n, rng);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.Normal();
      const Explanation e = ShapleyExact(f, x, bg, Names(n), {}, exec);
      const double sum = std::accumulate(e.contributions.begin(),
                                         e.contributions.end(), 0.0);
      out.efficiency = std::max(out.efficiency,
                                std::abs(sum - (f(x) - e.baseline)));
      out.dummy = std::max(out.dummy, std::abs(e.contributions[n - 1]));
      if (n <= 7) {
        const auto ref = PermutationShapley(f, x, bg);
        for (size_t j = 0; j < n; ++j) {
          out.brute_force = std::max(out.brute_force,
                                     std::abs(ref[j] - e.contributions[j]));
        }
      }
    }
  }
  // f symmetric in x0 and x1, evaluated where both are equal, against a
  // background that is symmetric under swapping them.
  const ModelFn sym = [](std::span<const double> z) {
    return z[0] * z[1] + std::exp(0.3 * (z[0] + z[1])) + z[2];
  };
  Matrix bg(20, 3);
  for (size_t r = 0; r < 10; ++r) {
    const double a = rng.Normal(), b = rng.Normal(), c = rng.Normal();
    bg(2 * r, 0) = a;
    bg(2 * r, 1) = b;
    bg(2 * r, 2) = c;
    bg(2 * r + 1, 0) = b;
    bg(2 * r + 1, 1) = a;
    bg(2 * r + 1, 2) = c;
  }
  const double x[] = {0.7, 0.7, -1.2};
  const Explanation e = ShapleyExact(sym, x, bg, Names(3), {}, exec);
  out.symmetry = std::abs(e.contributions[0] - e.contributions[1]);
  return out;
}

}  // namespace pyro::testing

#endif  // PYRO_TESTS_SHAPLEY_CHECK_H_
