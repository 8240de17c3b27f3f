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

#ifndef PYRO_RNG_H_
#define PYRO_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace pyro {

// Seeded random source. Only the mt19937_64 engine is used from <random>:
// the standard distributions are implementation-defined, so every draw is
// derived here to keep results identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform();

  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformIndex(uint64_t n);

  double Normal();

  // Gamma(shape, 1) by Marsaglia-Tsang.
  double Gamma(double shape);

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (size_t i = values.size(); i > 1; --i) {
      const size_t j = UniformIndex(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Deterministic sub-seed for stream `stream` of a parent seed (splitmix64).
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace pyro

#endif  // PYRO_RNG_H_
