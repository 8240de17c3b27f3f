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

// Central-difference check of the MLP backward pass.

#ifndef PYRO_TESTS_GRADCHECK_H_
#define PYRO_TESTS_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "pyro/mlp.h"
#include "pyro/rng.h"

namespace pyro::testing {

struct GradCase {
  std::vector<size_t> sizes;
  OutputLink link;
  MlpLoss loss;
};

inline std::vector<GradCase> GradCases() {
  return {
      {{5, 8, 1}, OutputLink::kIdentity, MlpLoss::kSquared},
      {{6, 10, 7, 1}, OutputLink::kSigmoid, MlpLoss::kLogistic},
      {{3, 4, 4, 4, 1}, OutputLink::kIdentity, MlpLoss::kSquared},
      {{12, 16, 1}, OutputLink::kSigmoid, MlpLoss::kSquared},
  };
}

// ||analytic - numeric|| / (||analytic|| + ||numeric||) for one model and
// sample, numeric by central differences with step h.
inline double GradientRelativeError(const MlpModel& model, std::span<const double> x,
                                    double y, MlpLoss loss, double h = 1e-5) {
  const auto analytic = Gradient(model, x, y, loss);
  MlpModel probe = model;
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (size_t i = 0; i < probe.params().size(); ++i) {
    const double saved = probe.params()[i];
    probe.params()[i] = saved + h;
    const double up = SampleLoss(probe, x, y, loss);
    probe.params()[i] = saved - h;
    const double down = SampleLoss(probe, x, y, loss);
    probe.params()[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    diff += (analytic[i] - numeric) * (analytic[i] - numeric);
    na += analytic[i] * analytic[i];
    nn += numeric * numeric;
  }
  const double denom = std::sqrt(na) + std::sqrt(nn);
  return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

// Worst relative error over every case, `seeds` seeds and a few samples.
inline double WorstGradientError(int seeds) {
  double worst = 0.0;
  for (const auto& c : GradCases()) {
    for (int s = 0; s < seeds; ++s) {
      const auto model = MlpModel::Initialize(c.sizes, c.link, 100 + s);
      Rng rng(200 + s);
      for (int k = 0; k < 4; ++k) {
        std::vector<double> x(c.sizes.front());
        for (double& v : x) v = rng.Normal();
        const double y = c.loss == MlpLoss::kLogistic ? (k % 2) : rng.Normal();
        worst = std::max(worst, GradientRelativeError(model, x, y, c.loss));
      }
    }
  }
  return worst;
}

}  // namespace pyro::testing

#endif  // PYRO_TESTS_GRADCHECK_H_
