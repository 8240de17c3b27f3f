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

#ifndef PYRO_AUGMENT_H_
#define PYRO_AUGMENT_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pyro/dataset.h"

namespace pyro {

enum class DistanceMetric { kZScoreEuclidean };

// Unordered pairs of real records (first id < second id), in the order they
// were planned.
struct PairPlan {
  std::vector<std::pair<std::string, std::string>> pairs;
  DistanceMetric distance_metric = DistanceMetric::kZScoreEuclidean;
  size_t max_synthetic = 0;
  Task task = Task::kSpalling;
  uint64_t seed = 0;
};

// a + u * (b - a) on continuous components; components flagged categorical
// are copied from a. An empty flag span treats every component as continuous.
std::vector<double> SmoteInterpolate(std::span<const double> a,
                                     std::span<const double> b, double u,
                                     std::span<const bool> categorical = {});

// Greedy nearest-neighbour pairing of Real records carrying the task target,
// using Euclidean distance on z-scored task features. Rounds of greedy
// matching (closest unused pair first, ties by smaller ids) run until
// target_count pairs exist or all pairs are used; no record repeats before
// every record has been paired once.
PairPlan BuildPairs(const Dataset& ds, size_t target_count, uint64_t seed,
                    Task task = Task::kSpalling);

struct SynthesisOptions {
  // Synthetic records are a spalling-corpus technique; this lifts the
  // restriction so fire-resistance pairs (worst case = shorter FR) work too.
  bool allow_fire_resistance = false;
};

struct SynthesisResult {
  std::vector<ColumnRecord> records;
  // One entry per categorical feature the parents disagreed on.
  std::vector<std::string> notes;
};

// Averages each pair's continuous features. Spalled if either parent spalled.
// Categorical disagreements take the lexicographically-first parent's value.
SynthesisResult PairSynthesize(const Dataset& ds, const PairPlan& plan,
                               const SynthesisOptions& options = {});

// Classic SMOTE over the same pairs: one record per pair at a random point of
// the segment from the first parent, u ~ U[0,1) drawn from `seed`.
SynthesisResult SmoteSynthesize(const Dataset& ds, const PairPlan& plan,
                                uint64_t seed,
                                const SynthesisOptions& options = {});

// Appends records from an augmented-observation CSV. Every row must carry
// provenance=augmented. Any existing split is dropped: ingest, then split.
Dataset IngestAugmented(const Dataset& ds, const std::string& path);
Dataset IngestAugmented(const Dataset& ds, std::istream& in);

}  // namespace pyro

#endif  // PYRO_AUGMENT_H_
