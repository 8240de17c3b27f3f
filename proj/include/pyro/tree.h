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

#ifndef PYRO_TREE_H_
#define PYRO_TREE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pyro/matrix.h"

namespace pyro {

enum class Criterion { kGini, kVariance };

struct TreeParams {
  Criterion criterion = Criterion::kVariance;
  int max_depth = -1;           // -1: unlimited
  int max_leaf_nodes = 0;       // 0: unlimited
  int min_samples_split = 2;
  int features_per_split = 0;   // 0: all features
  int n_classes = 2;            // kGini only
};

// Every node keeps its value (class frequencies for kGini, mean for
// kVariance) so that path decompositions can read interior means.
struct TreeNode {
  int feature = -1;  // -1 on leaves
  double threshold = 0.0;  // x[feature] <= threshold goes left
  int left = -1;
  int right = -1;
  int n_samples = 0;
  std::vector<double> value;

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int LeafIndex(std::span<const double> x) const;
  const std::vector<double>& Value(std::span<const double> x) const {
    return nodes[LeafIndex(x)].value;
  }
  size_t LeafCount() const;
  int Depth() const;
};

// Greedy best-first CART. Candidate thresholds are midpoints between
// consecutive distinct values; ties go to the lower feature index, then the
// lower threshold. Growth stops at max_leaf_nodes, max_depth,
// min_samples_split or a pure node.
Tree FitCart(const Matrix& X, std::span<const double> y, const TreeParams& params,
             uint64_t seed = 0);

// Same, on a multiset of rows (bootstrap samples may repeat rows).
Tree FitCart(const Matrix& X, std::span<const double> y,
             std::span<const size_t> rows, const TreeParams& params,
             uint64_t seed);

}  // namespace pyro

#endif  // PYRO_TREE_H_
