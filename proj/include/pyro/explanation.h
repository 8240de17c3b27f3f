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

#ifndef PYRO_EXPLANATION_H_
#define PYRO_EXPLANATION_H_

#include <string>
#include <vector>

namespace pyro {

// Additive attribution of one prediction:
// prediction = baseline + sum(contributions).
struct Explanation {
  double baseline = 0.0;
  std::vector<std::string> features;
  std::vector<double> contributions;
  double prediction = 0.0;
};

}  // namespace pyro

#endif  // PYRO_EXPLANATION_H_
