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

#include "pyro/mlp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pyro/error.h"
#include "pyro/gbt.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

constexpr double kProbClip = 1e-15;

double ApplyLink(const MlpModel& m, double z) {
  if (m.link() == OutputLink::kSigmoid) return Sigmoid(z);
  return z * m.output_scale + m.output_offset;
}

// dL/dz for the output pre-activation.
double OutputDelta(const MlpModel& m, double z, double prediction, double y,
                   MlpLoss loss) {
  if (loss == MlpLoss::kLogistic) {
    if (m.link() != OutputLink::kSigmoid) {
      throw Error(ErrorCode::kInvalidArgument, "logistic loss needs a sigmoid output");
    }
    return Sigmoid(z) - y;
  }
  const double dpred_dz =
      m.link() == OutputLink::kSigmoid ? prediction * (1.0 - prediction) : m.output_scale;
  return (prediction - y) * dpred_dz;
}

}  // namespace

MlpModel::MlpModel(std::vector<size_t> layer_sizes, OutputLink link)
    : sizes_(std::move(layer_sizes)), link_(link) {
  if (sizes_.size() < 2 || sizes_.back() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "layer sizes must run from the input width to one output");
  }
  size_t offset = 0;
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    DenseLayer layer;
    layer.in = sizes_[l];
    layer.out = sizes_[l + 1];
    if (layer.in == 0 || layer.out == 0) {
      throw Error(ErrorCode::kInvalidArgument, "layer widths must be positive");
    }
    layer.weights = offset;
    offset += layer.in * layer.out;
    layer.bias = offset;
    offset += layer.out;
    if (l + 2 < sizes_.size()) {
      layer.alpha = offset;
      offset += layer.out;
    }
    layers_.push_back(layer);
  }
  params_.assign(offset, 0.0);
}

MlpModel MlpModel::Initialize(std::vector<size_t> layer_sizes, OutputLink link,
                              uint64_t seed, double alpha0) {
  MlpModel m(std::move(layer_sizes), link);
  Rng rng(seed);
  for (const auto& layer : m.layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.in));
    for (size_t k = 0; k < layer.in * layer.out; ++k) {
      m.params_[layer.weights + k] = (2.0 * rng.Uniform() - 1.0) * limit;
    }
    if (layer.alpha) {
      std::fill_n(m.params_.begin() + *layer.alpha, layer.out, alpha0);
    }
  }
  return m;
}

double Forward(const MlpModel& m, std::span<const double> x, ForwardCache* cache) {
  if (!m.fitted()) throw Error(ErrorCode::kUnfittedModel, "network has no parameters");
  if (x.size() != m.input_width()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input width " + std::to_string(x.size()) + ", network expects " +
                    std::to_string(m.input_width()));
  }
  const auto& p = m.params();
  std::vector<double> a(x.begin(), x.end());
  if (cache) {
    cache->inputs.clear();
    cache->net.clear();
  }
  double z = 0.0;
  for (const auto& layer : m.layers()) {
    std::vector<double> net(layer.out);
    for (size_t j = 0; j < layer.out; ++j) {
      double s = p[layer.bias + j];
      const double* w = p.data() + layer.weights + j * layer.in;
      for (size_t i = 0; i < layer.in; ++i) s += w[i] * a[i];
      net[j] = s;
    }
    if (cache) cache->inputs.push_back(a);
    if (layer.alpha) {
      a.resize(layer.out);
      for (size_t j = 0; j < layer.out; ++j) a[j] = Prelu(net[j], p[*layer.alpha + j]);
    } else {
      z = net[0];
    }
    if (cache) cache->net.push_back(std::move(net));
  }
  const double out = ApplyLink(m, z);
  if (cache) {
    cache->z = z;
    cache->output = out;
  }
  return out;
}

double SampleLoss(const MlpModel& m, std::span<const double> x, double y,
                  MlpLoss loss) {
  const double pred = Forward(m, x);
  if (loss == MlpLoss::kSquared) return 0.5 * (pred - y) * (pred - y);
  const double p = std::clamp(pred, kProbClip, 1.0 - kProbClip);
  return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
}

std::vector<double> Backward(const MlpModel& m, const ForwardCache& cache,
                             double y, MlpLoss loss) {
  const auto& layers = m.layers();
  if (cache.net.size() != layers.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "forward cache does not match network");
  }
  const auto& p = m.params();
  std::vector<double> grad(p.size(), 0.0);
  // delta: dL/dnet of the current layer.
  std::vector<double> delta = {OutputDelta(m, cache.z, cache.output, y, loss)};
  for (size_t l = layers.size(); l-- > 0;) {
    const auto& layer = layers[l];
    const auto& in = cache.inputs[l];
    for (size_t j = 0; j < layer.out; ++j) {
      double* gw = grad.data() + layer.weights + j * layer.in;
      for (size_t i = 0; i < layer.in; ++i) gw[i] += delta[j] * in[i];
      grad[layer.bias + j] += delta[j];
    }
    if (l == 0) break;
    // Back through the PReLU of the layer below.
    const auto& below = layers[l - 1];
    const auto& net_below = cache.net[l - 1];
    std::vector<double> next(layer.in, 0.0);
    for (size_t j = 0; j < layer.out; ++j) {
      const double* w = p.data() + layer.weights + j * layer.in;
      for (size_t i = 0; i < layer.in; ++i) next[i] += w[i] * delta[j];
    }
    for (size_t i = 0; i < layer.in; ++i) {
      const double alpha = p[*below.alpha + i];
      if (net_below[i] > 0.0) {
        // slope gradient is zero on the positive branch
      } else {
        grad[*below.alpha + i] += next[i] * net_below[i];
        next[i] *= alpha;
      }
    }
    delta = std::move(next);
  }
  return grad;
}

std::vector<double> Gradient(const MlpModel& m, std::span<const double> x,
                             double y, MlpLoss loss) {
  ForwardCache cache;
  Forward(m, x, &cache);
  return Backward(m, cache, y, loss);
}

std::vector<double> BatchGradient(const MlpModel& m, const Matrix& X,
                                  std::span<const double> y,
                                  std::span<const size_t> rows, MlpLoss loss,
                                  Exec exec) {
  const size_t n_params = m.params().size();
  std::vector<double> sum(n_params, 0.0);
  if (rows.empty()) return sum;
  if (exec == Exec::kParallel) {
    const int n = static_cast<int>(rows.size());
    std::vector<std::vector<double>> per_sample(rows.size());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
      per_sample[k] = Gradient(m, X.row(rows[k]), y[rows[k]], loss);
    }
    for (const auto& g : per_sample) {
      for (size_t i = 0; i < n_params; ++i) sum[i] += g[i];
    }
  } else {
    for (size_t r : rows) {
      const auto g = Gradient(m, X.row(r), y[r], loss);
      for (size_t i = 0; i < n_params; ++i) sum[i] += g[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& g : sum) g *= inv;
  return sum;
}

AdamState AdamState::ForParameters(size_t n, double learning_rate) {
  AdamState s;
  s.m.assign(n, 0.0);
  s.v.assign(n, 0.0);
  s.learning_rate = learning_rate;
  return s;
}

void AdamStep(AdamState& state, std::span<double> params,
              std::span<const double> grads) {
  if (params.size() != grads.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "Adam state, parameters and gradients differ in shape");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

MlpModel FitMlp(const Matrix& X, std::span<const double> y, const MlpParams& params,
                const Matrix* X_valid, std::span<const double> y_valid, Exec exec) {
  if (X.rows() == 0) throw Error(ErrorCode::kEmptyData, "cannot fit on empty data");
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "X and y differ in length");
  }
  const bool has_valid = X_valid != nullptr && X_valid->rows() > 0;
  if (has_valid && X_valid->rows() != y_valid.size()) {
    throw Error(ErrorCode::kLengthMismatch, "validation X and y differ in length");
  }

  std::vector<size_t> sizes = {X.cols()};
  sizes.insert(sizes.end(), params.hidden.begin(), params.hidden.end());
  sizes.push_back(1);
  const OutputLink link =
      params.loss == MlpLoss::kLogistic ? OutputLink::kSigmoid : OutputLink::kIdentity;
  MlpModel m = MlpModel::Initialize(sizes, link, params.seed);
  if (link == OutputLink::kIdentity && params.standardize_target) {
    const double n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    m.output_offset = mean;
    m.output_scale = sd > 0.0 ? sd : 1.0;
  }

  auto mean_loss = [&](const MlpModel& model, const Matrix& A,
                       std::span<const double> b) {
    double total = 0.0;
    for (size_t i = 0; i < A.rows(); ++i) total += SampleLoss(model, A.row(i), b[i], params.loss);
    return total / static_cast<double>(A.rows());
  };

  AdamState adam = AdamState::ForParameters(m.params().size(), params.learning_rate);
  Rng rng(DeriveSeed(params.seed, 1));
  std::vector<size_t> order(X.rows());
  std::iota(order.begin(), order.end(), 0);
  const size_t batch = static_cast<size_t>(std::max(1, params.batch_size));

  std::vector<double> best_params = m.params();
  double best_valid = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.Shuffle(std::span<size_t>(order));
    for (size_t start = 0; start < order.size(); start += batch) {
      const size_t end = std::min(order.size(), start + batch);
      const std::span<const size_t> rows(order.data() + start, end - start);
      const auto g = BatchGradient(m, X, y, rows, params.loss, exec);
      AdamStep(adam, m.params(), g);
    }
    m.training_loss.push_back(mean_loss(m, X, y));
    if (has_valid) {
      const double v = mean_loss(m, *X_valid, y_valid);
      m.validation_loss.push_back(v);
      if (v < best_valid) {
        best_valid = v;
        best_params = m.params();
        since_best = 0;
      } else if (params.patience > 0 && ++since_best >= params.patience) {
        break;
      }
    }
  }
  if (has_valid && std::isfinite(best_valid)) m.params() = best_params;
  return m;
}

}  // namespace pyro
