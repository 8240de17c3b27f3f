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

#include "pyro/augment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "pyro/error.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

constexpr Feature kContinuous[] = {Feature::kW,  Feature::kR,  Feature::kL,
                                   Feature::kFc, Feature::kFy, Feature::kC,
                                   Feature::kEx, Feature::kEy, Feature::kP};
constexpr Feature kCategorical[] = {Feature::kK, Feature::kE, Feature::kS};

struct Edge {
  double distance;
  size_t a;  // indices into the candidate list, ids[a] < ids[b]
  size_t b;
};

std::map<std::string, const ColumnRecord*> IndexById(const Dataset& ds) {
  std::map<std::string, const ColumnRecord*> index;
  for (const auto& r : ds.records) index[r.id] = &r;
  return index;
}

// Shared pair walk. `mix` produces the continuous value from both parents.
template <typename Mix>
SynthesisResult Synthesize(const Dataset& ds, const PairPlan& plan,
                           const SynthesisOptions& options, Mix mix) {
  if (plan.task != Task::kSpalling && !options.allow_fire_resistance) {
    throw Error(ErrorCode::kInvalidArgument,
                "synthetic generation is limited to the spalling task");
  }
  const auto index = IndexById(ds);
  SynthesisResult out;
  for (size_t p = 0; p < plan.pairs.size(); ++p) {
    const auto& [id_a, id_b] = plan.pairs[p];
    const auto ia = index.find(id_a);
    const auto ib = index.find(id_b);
    if (ia == index.end() || ib == index.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair (" + id_a + ", " + id_b + ") not in dataset");
    }
    const ColumnRecord& a = *ia->second;
    const ColumnRecord& b = *ib->second;
    if (!a.HasTarget(plan.task) || !b.HasTarget(plan.task)) {
      throw Error(ErrorCode::kMissingLabel,
                  "pair (" + id_a + ", " + id_b + ") lacks the " +
                      std::string(TaskName(plan.task)) + " label");
    }
    const ColumnRecord& first = a.id < b.id ? a : b;

    ColumnRecord rec = first;
    rec.id = "syn-" + id_a + "+" + id_b;
    rec.provenance = Provenance::kSynthetic;
    for (Feature f : kContinuous) {
      const auto va = a.Value(f);
      const auto vb = b.Value(f);
      if (va && vb) {
        rec.SetValue(f, mix(p, *va, *vb));
      } else if (f == Feature::kL) {
        rec.length_m.reset();
      } else if (f == Feature::kFy) {
        rec.fy_mpa.reset();
      }
    }
    for (Feature f : kCategorical) {
      if (*a.Value(f) != *b.Value(f)) {
        out.notes.push_back(rec.id + ": " + std::string(FeatureName(f)) +
                            " disagrees, taken from " + first.id);
      }
    }

    rec.spalled.reset();
    rec.fire_resistance_min.reset();
    if (plan.task == Task::kSpalling) {
      rec.spalled = *a.spalled || *b.spalled;
    } else {
      rec.fire_resistance_min =
          std::min(*a.fire_resistance_min, *b.fire_resistance_min);
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<double> SmoteInterpolate(std::span<const double> a,
                                     std::span<const double> b, double u,
                                     std::span<const bool> categorical) {
  if (a.size() != b.size() || (!categorical.empty() && categorical.size() != a.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "interpolation endpoints differ in dimension");
  }
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "u must lie in [0, 1]");
  }
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!categorical.empty() && categorical[i]) {
      out[i] = a[i];
    } else if (u == 1.0) {
      out[i] = b[i];
    } else {
      out[i] = a[i] + u * (b[i] - a[i]);
    }
  }
  return out;
}

PairPlan BuildPairs(const Dataset& ds, size_t target_count, uint64_t seed,
                    Task task) {
  std::vector<const ColumnRecord*> candidates;
  for (const auto& r : ds.records) {
    if (r.provenance == Provenance::kReal && r.HasTarget(task)) {
      candidates.push_back(&r);
    }
  }
  if (candidates.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "pairing needs at least 2 real records with the task target");
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto* x, const auto* y) { return x->id < y->id; });

  const size_t n = candidates.size();
  const auto features = TaskFeatures(task);
  Matrix z(n, features.size());
  for (size_t i = 0; i < n; ++i) {
    const auto v = EncodeTree(*candidates[i], task);
    std::copy(v.begin(), v.end(), z.row(i).begin());
  }
  for (size_t j = 0; j < features.size(); ++j) {
    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) mean += z(i, j);
    mean /= n;
    double var = 0.0;
    for (size_t i = 0; i < n; ++i) var += (z(i, j) - mean) * (z(i, j) - mean);
    const double sd = std::sqrt(var / n);
    for (size_t i = 0; i < n; ++i) {
      z(i, j) = sd > 0.0 ? (z(i, j) - mean) / sd : 0.0;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      double d2 = 0.0;
      for (size_t j = 0; j < features.size(); ++j) {
        const double d = z(a, j) - z(b, j);
        d2 += d * d;
      }
      edges.push_back({std::sqrt(d2), a, b});
    }
  }
  // Candidates are sorted by id, so index order is id order for tie breaks.
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.distance, x.a, x.b) < std::tie(y.distance, y.a, y.b);
  });

  PairPlan plan;
  plan.task = task;
  plan.seed = seed;
  plan.max_synthetic = target_count;
  std::vector<bool> used_edge(edges.size(), false);
  auto take = [&](size_t e) {
    used_edge[e] = true;
    plan.pairs.emplace_back(candidates[edges[e].a]->id, candidates[edges[e].b]->id);
  };

  bool first_round = true;
  while (plan.pairs.size() < target_count) {
    std::vector<bool> matched(n, false);
    size_t added = 0;
    for (size_t e = 0; e < edges.size() && plan.pairs.size() < target_count; ++e) {
      if (used_edge[e] || matched[edges[e].a] || matched[edges[e].b]) continue;
      matched[edges[e].a] = matched[edges[e].b] = true;
      take(e);
      ++added;
    }
    if (first_round) {
      // The leftover of an odd count joins its nearest neighbour.
      for (size_t i = 0; i < n && plan.pairs.size() < target_count; ++i) {
        if (matched[i]) continue;
        for (size_t e = 0; e < edges.size(); ++e) {
          if (!used_edge[e] && (edges[e].a == i || edges[e].b == i)) {
            take(e);
            ++added;
            break;
          }
        }
      }
      first_round = false;
    }
    if (added == 0) break;
  }
  return plan;
}

SynthesisResult PairSynthesize(const Dataset& ds, const PairPlan& plan,
                               const SynthesisOptions& options) {
  return Synthesize(ds, plan, options,
                    [](size_t, double a, double b) { return 0.5 * (a + b); });
}

SynthesisResult SmoteSynthesize(const Dataset& ds, const PairPlan& plan,
                                uint64_t seed, const SynthesisOptions& options) {
  Rng rng(seed);
  std::vector<double> u(plan.pairs.size());
  for (double& v : u) v = rng.Uniform();
  return Synthesize(ds, plan, options, [&](size_t p, double a, double b) {
    const double ab[] = {a};
    const double bb[] = {b};
    return SmoteInterpolate(ab, bb, u[p])[0];
  });
}

Dataset IngestAugmented(const Dataset& ds, std::istream& in) {
  Dataset incoming = ParseCsv(in, ds.schema);
  std::set<std::string> ids;
  for (const auto& r : ds.records) ids.insert(r.id);
  Dataset out = ds;
  int row = 0;
  for (auto& r : incoming.records) {
    ++row;
    if (r.provenance != Provenance::kAugmented) {
      throw DataError(ErrorCode::kWrongProvenance, row, "provenance",
                      "augmented channel only accepts provenance=augmented");
    }
    if (!ids.insert(r.id).second) {
      throw DataError(ErrorCode::kDuplicateId, row, "id",
                      "id '" + r.id + "' already in dataset");
    }
    out.records.push_back(std::move(r));
  }
  out.split.clear();
  out.warnings.insert(out.warnings.end(), incoming.warnings.begin(),
                      incoming.warnings.end());
  return out;
}

Dataset IngestAugmented(const Dataset& ds, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return IngestAugmented(ds, in);
}

}  // namespace pyro
