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

#include "pyro/explain.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "pyro/error.h"
#include "pyro/metrics.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

std::vector<size_t> AllColumns(size_t n) {
  std::vector<size_t> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

void CheckInputs(std::span<const double> x, const Matrix& background) {
  if (background.rows() == 0) {
    throw Error(ErrorCode::kEmptyBackground, "background set is empty");
  }
  if (background.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "background width differs from the instance width");
  }
}

double CoalitionValue(const ModelFn& f, std::span<const double> x,
                      const Matrix& background, std::span<const size_t> features,
                      uint64_t mask, std::vector<double>& z) {
  double total = 0.0;
  for (size_t r = 0; r < background.rows(); ++r) {
    const auto bg = background.row(r);
    std::copy(x.begin(), x.end(), z.begin());
    for (size_t b = 0; b < features.size(); ++b) {
      if (!(mask >> b & 1U)) z[features[b]] = bg[features[b]];
    }
    total += f(z);
  }
  return total / static_cast<double>(background.rows());
}

}  // namespace

std::vector<double> CoalitionValues(const ModelFn& f, std::span<const double> x,
                                    const Matrix& background,
                                    std::span<const size_t> features, Exec exec) {
  CheckInputs(x, background);
  if (features.size() > kMaxExactFeatures) {
    throw Error(ErrorCode::kTooManyFeatures,
                std::to_string(features.size()) + " features exceed the exact limit of " +
                    std::to_string(kMaxExactFeatures));
  }
  const int64_t n_masks = int64_t{1} << features.size();
  std::vector<double> v(static_cast<size_t>(n_masks));
  if (exec == Exec::kParallel) {
#pragma omp parallel
    {
      std::vector<double> z(x.size());
#pragma omp for schedule(dynamic, 8)
      for (int64_t mask = 0; mask < n_masks; ++mask) {
        v[mask] = CoalitionValue(f, x, background, features, mask, z);
      }
    }
  } else {
    std::vector<double> z(x.size());
    for (int64_t mask = 0; mask < n_masks; ++mask) {
      v[mask] = CoalitionValue(f, x, background, features, mask, z);
    }
  }
  return v;
}

Explanation ShapleyExact(const ModelFn& f, std::span<const double> x,
                         const Matrix& background, const std::vector<std::string>& names,
                         std::span<const size_t> features, Exec exec) {
  CheckInputs(x, background);
  std::vector<size_t> cols(features.begin(), features.end());
  if (cols.empty()) cols = AllColumns(x.size());
  const size_t F = cols.size();
  const auto v = CoalitionValues(f, x, background, cols, exec);

  // weight[s] = s! (F - s - 1)! / F!
  std::vector<double> weight(F);
  for (size_t s = 0; s < F; ++s) {
    double w = 1.0 / static_cast<double>(F);
    // 1 / (F * C(F-1, s))
    for (size_t k = 1; k <= s; ++k) {
      w *= static_cast<double>(k) / static_cast<double>(F - k);
    }
    weight[s] = w;
  }

  Explanation e;
  e.baseline = v.front();
  e.prediction = f(x);
  for (size_t i = 0; i < F; ++i) {
    e.features.push_back(cols[i] < names.size() ? names[cols[i]]
                                                : "x" + std::to_string(cols[i]));
    const uint64_t bit = uint64_t{1} << i;
    double phi = 0.0;
    for (uint64_t mask = 0; mask < v.size(); ++mask) {
      if (mask & bit) continue;
      phi += weight[std::popcount(mask)] * (v[mask | bit] - v[mask]);
    }
    e.contributions.push_back(phi);
  }
  return e;
}

Explanation ShapleyMonteCarlo(const ModelFn& f, std::span<const double> x,
                              const Matrix& background,
                              const std::vector<std::string>& names, int n_samples,
                              uint64_t seed) {
  CheckInputs(x, background);
  if (n_samples <= 0) throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  const size_t F = x.size();
  Explanation e;
  for (size_t r = 0; r < background.rows(); ++r) e.baseline += f(background.row(r));
  e.baseline /= static_cast<double>(background.rows());
  e.prediction = f(x);
  e.contributions.assign(F, 0.0);
  for (size_t i = 0; i < F; ++i) {
    e.features.push_back(i < names.size() ? names[i] : "x" + std::to_string(i));
  }
  Rng rng(seed);
  auto order = AllColumns(F);
  std::vector<double> z(F);
  for (int s = 0; s < n_samples; ++s) {
    rng.Shuffle(std::span<size_t>(order));
    const auto bg = background.row(rng.UniformIndex(background.rows()));
    std::copy(bg.begin(), bg.end(), z.begin());
    double prev = f(z);
    for (size_t j : order) {
      z[j] = x[j];
      const double cur = f(z);
      e.contributions[j] += cur - prev;
      prev = cur;
    }
  }
  for (double& c : e.contributions) c /= static_cast<double>(n_samples);
  return e;
}

Matrix SampleBackground(const Matrix& data, size_t cap, uint64_t seed) {
  if (data.rows() <= cap) return data;
  auto idx = AllColumns(data.rows());
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(idx));
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return data.Select(idx);
}

ImportanceReport Importance(const ModelFn& f, const Matrix& eval_set,
                            const Matrix& background,
                            const std::vector<std::string>& names,
                            std::optional<int> mc_samples, uint64_t seed, Exec exec) {
  if (eval_set.rows() == 0) throw Error(ErrorCode::kEmptyInput, "evaluation set is empty");
  ImportanceReport report;
  report.mean_abs.assign(eval_set.cols(), 0.0);
  for (size_t r = 0; r < eval_set.rows(); ++r) {
    const Explanation e =
        mc_samples ? ShapleyMonteCarlo(f, eval_set.row(r), background, names, *mc_samples,
                                       DeriveSeed(seed, r))
                   : ShapleyExact(f, eval_set.row(r), background, names, {}, exec);
    if (r == 0) report.features = e.features;
    for (size_t i = 0; i < e.contributions.size(); ++i) {
      report.mean_abs[i] += std::abs(e.contributions[i]);
    }
  }
  for (double& m : report.mean_abs) m /= static_cast<double>(eval_set.rows());
  const double top = *std::max_element(report.mean_abs.begin(), report.mean_abs.end());
  for (double m : report.mean_abs) report.score.push_back(top > 0.0 ? 100.0 * m / top : 0.0);
  return report;
}

std::vector<int> EqualFrequencyBins(std::span<const double> values, int bins) {
  const size_t n = values.size();
  auto order = AllColumns(n);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<int> out(n);
  for (size_t k = 0; k < n;) {
    size_t j = k;
    while (j < n && values[order[j]] == values[order[k]]) ++j;
    const int bin = static_cast<int>(k * static_cast<size_t>(bins) / n);
    for (size_t t = k; t < j; ++t) out[order[t]] = bin;
    k = j;
  }
  return out;
}

double NormalizedMutualInformation(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "lengths differ");
  if (x.empty()) throw Error(ErrorCode::kEmptyInput, "empty input");
  const double n = static_cast<double>(x.size());
  std::map<int, double> px, py;
  std::map<std::pair<int, int>, double> pxy;
  for (size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1.0;
    py[y[i]] += 1.0;
    pxy[{x[i], y[i]}] += 1.0;
  }
  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [k, c] : counts) h -= c / n * std::log(c / n);
    return h;
  };
  const double hx = entropy(px);
  const double hy = entropy(py);
  if (hx <= 0.0 || hy <= 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : pxy) {
    const double p = c / n;
    mi += p * std::log(p / (px[key.first] / n * (py[key.second] / n)));
  }
  return std::clamp(mi / std::sqrt(hx * hy), 0.0, 1.0);
}

FeatureTable TaskTable(const Dataset& ds, Task task) {
  const auto features = TaskFeatures(task);
  const Task target = task == Task::kSpalling ? Task::kSpalling : Task::kFireResistance;
  FeatureTable t;
  for (Feature f : features) {
    t.names.emplace_back(FeatureName(f));
    t.categorical.push_back(f == Feature::kK || f == Feature::kE || f == Feature::kS);
  }
  t.names.emplace_back(target == Task::kSpalling ? "SP" : "FR");
  t.categorical.push_back(target == Task::kSpalling);
  t.columns.resize(t.names.size());
  for (const auto& rec : ds.records) {
    if (!rec.HasTarget(target)) continue;
    const auto x = EncodeTree(rec, task);
    for (size_t i = 0; i < x.size(); ++i) t.columns[i].push_back(x[i]);
    t.columns.back().push_back(target == Task::kSpalling ? (*rec.spalled ? 1.0 : 0.0)
                                                         : *rec.fire_resistance_min);
  }
  return t;
}

LabeledMatrix AssociationMatrix(const FeatureTable& table, int bins) {
  const size_t k = table.columns.size();
  const size_t n = k ? table.columns[0].size() : 0;
  if (bins < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two bins");
  if (n < 2 * static_cast<size_t>(bins)) {
    throw Error(ErrorCode::kInsufficientData,
                "association needs at least " + std::to_string(2 * bins) + " records");
  }
  std::vector<std::vector<int>> codes(k);
  for (size_t c = 0; c < k; ++c) {
    if (table.categorical[c]) {
      for (double v : table.columns[c]) codes[c].push_back(static_cast<int>(std::lround(v)));
    } else {
      codes[c] = EqualFrequencyBins(table.columns[c], bins);
    }
  }
  LabeledMatrix out{table.names, Matrix(k, k), {}};
  for (size_t a = 0; a < k; ++a) {
    out.values(a, a) = 1.0;
    for (size_t b = a + 1; b < k; ++b) {
      const double v = NormalizedMutualInformation(codes[a], codes[b]);
      out.values(a, b) = v;
      out.values(b, a) = v;
    }
  }
  return out;
}

std::string CorrelationBand(double r) {
  const double a = std::abs(r);
  if (a >= 0.5) return "strong";
  if (a >= 0.3) return "moderate";
  return "weak";
}

LabeledMatrix CorrelationMatrix(const FeatureTable& table) {
  const size_t k = table.columns.size();
  const size_t n = k ? table.columns[0].size() : 0;
  if (n < 2) throw Error(ErrorCode::kInsufficientData, "correlation needs two records");
  for (size_t c = 0; c < k; ++c) {
    const auto [lo, hi] = std::minmax_element(table.columns[c].begin(), table.columns[c].end());
    if (*lo == *hi) {
      throw Error(ErrorCode::kZeroVariance, "column " + table.names[c] + " is constant");
    }
  }
  LabeledMatrix out{table.names, Matrix(k, k), {}};
  out.bands.assign(k, std::vector<std::string>(k));
  for (size_t a = 0; a < k; ++a) {
    out.values(a, a) = 1.0;
    out.bands[a][a] = CorrelationBand(1.0);
    for (size_t b = a + 1; b < k; ++b) {
      const double r = PearsonR(table.columns[a], table.columns[b]);
      out.values(a, b) = out.values(b, a) = r;
      out.bands[a][b] = out.bands[b][a] = CorrelationBand(r);
    }
  }
  return out;
}

Explanation ExplainRecord(const EnsembleModel& ens, const ColumnRecord& rec,
                          const Matrix& background, Exec exec) {
  auto violations = ValidateRecord(rec, ens.schema(), false, Purpose::kPrediction);
  if (HasErrors(violations)) throw ValidationError(rec.id, std::move(violations));
  const auto x = EncodeTree(rec, ens.task);
  std::vector<std::string> names;
  for (Feature f : TaskFeatures(ens.task)) names.emplace_back(FeatureName(f));
  const ModelFn f = [&ens](std::span<const double> v) { return EnsembleValue(ens, v); };
  return ShapleyExact(f, x, background, names, {}, exec);
}

}  // namespace pyro
