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

#ifndef PYRO_MLP_H_
#define PYRO_MLP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pyro/matrix.h"

namespace pyro {

enum class OutputLink { kIdentity, kSigmoid };
enum class MlpLoss { kSquared, kLogistic };

inline double Prelu(double x, double alpha) { return x > 0.0 ? x : alpha * x; }

// Offsets of one dense layer inside the flat parameter vector. Weights are
// row-major [out][in].
struct DenseLayer {
  size_t in = 0;
  size_t out = 0;
  size_t weights = 0;
  size_t bias = 0;
  std::optional<size_t> alpha;  // PReLU slopes, hidden layers only
};

// Multilayer perceptron: hidden layers compute prelu(W a + b), the single
// output unit applies the link. Identity outputs are rescaled by
// output_scale / output_offset (the training-target standardization).
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::vector<size_t> layer_sizes, OutputLink link);

  // He-style uniform weights U(-sqrt(6/fan_in), sqrt(6/fan_in)), zero
  // biases, PReLU slopes at alpha0.
  static MlpModel Initialize(std::vector<size_t> layer_sizes, OutputLink link,
                             uint64_t seed, double alpha0 = 0.25);

  const std::vector<size_t>& layer_sizes() const { return sizes_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  OutputLink link() const { return link_; }
  size_t input_width() const { return sizes_.front(); }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  double output_scale = 1.0;
  double output_offset = 0.0;
  // Per-epoch mean loss (1/2 squared error, or log loss) from FitMlp.
  std::vector<double> training_loss;
  std::vector<double> validation_loss;

  bool fitted() const { return !params_.empty(); }

 private:
  std::vector<size_t> sizes_;
  std::vector<DenseLayer> layers_;
  OutputLink link_ = OutputLink::kIdentity;
  std::vector<double> params_;
};

struct ForwardCache {
  std::vector<std::vector<double>> inputs;  // input of each layer
  std::vector<std::vector<double>> net;     // pre-activation of each layer
  double z = 0.0;                           // output pre-activation
  double output = 0.0;
};

double Forward(const MlpModel& m, std::span<const double> x,
               ForwardCache* cache = nullptr);

// Per-sample loss: 1/2 (prediction - y)^2, or binary cross-entropy.
double SampleLoss(const MlpModel& m, std::span<const double> x, double y,
                  MlpLoss loss);

// Analytic gradient of SampleLoss with respect to every parameter, laid out
// like MlpModel::params(). Requires the cache from Forward on the same x.
std::vector<double> Backward(const MlpModel& m, const ForwardCache& cache,
                             double y, MlpLoss loss);
std::vector<double> Gradient(const MlpModel& m, std::span<const double> x,
                             double y, MlpLoss loss);

// Mean gradient over `rows`. Per-sample gradients are reduced in row order,
// so kSerial and kParallel agree bit for bit.
std::vector<double> BatchGradient(const MlpModel& m, const Matrix& X,
                                  std::span<const double> y,
                                  std::span<const size_t> rows, MlpLoss loss,
                                  Exec exec = Exec::kParallel);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double learning_rate = 0.03;

  static AdamState ForParameters(size_t n, double learning_rate = 0.03);
};

// Bias-corrected Adam update, in place.
void AdamStep(AdamState& state, std::span<double> params,
              std::span<const double> grads);

struct MlpParams {
  std::vector<size_t> hidden = {64};
  int epochs = 500;
  int batch_size = 32;
  uint64_t seed = 0;
  int patience = 50;  // early stop on validation loss; 0 disables
  double learning_rate = 0.03;
  MlpLoss loss = MlpLoss::kSquared;
  bool standardize_target = true;  // identity link only
};

// Mini-batch Adam. With validation data, training stops after `patience`
// epochs without improvement and the best-validation weights are kept.
MlpModel FitMlp(const Matrix& X, std::span<const double> y, const MlpParams& params,
                const Matrix* X_valid = nullptr,
                std::span<const double> y_valid = {},
                Exec exec = Exec::kParallel);

}  // namespace pyro

#endif  // PYRO_MLP_H_
