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

#include "pyro/tree.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "pyro/error.h"
#include "pyro/rng.h"

namespace pyro {
namespace {

struct Split {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

struct Pending {
  int node;
  int depth;
  std::vector<size_t> rows;
  Split split;
};

// Weighted impurity (n * impurity): Gini n - sum(c_k^2)/n, or the SSE.
class Impurity {
 public:
  Impurity(Criterion criterion, int n_classes)
      : criterion_(criterion), counts_(criterion == Criterion::kGini ? n_classes : 0) {}

  void Add(double y) {
    ++n_;
    if (criterion_ == Criterion::kGini) {
      counts_[static_cast<size_t>(y)] += 1.0;
    } else {
      sum_ += y;
      sum_sq_ += y * y;
    }
  }
  void Remove(double y) {
    --n_;
    if (criterion_ == Criterion::kGini) {
      counts_[static_cast<size_t>(y)] -= 1.0;
    } else {
      sum_ -= y;
      sum_sq_ -= y * y;
    }
  }
  double Weighted() const {
    if (n_ == 0) return 0.0;
    if (criterion_ == Criterion::kGini) {
      double sq = 0.0;
      for (double c : counts_) sq += c * c;
      return n_ - sq / n_;
    }
    return std::max(0.0, sum_sq_ - sum_ * sum_ / n_);
  }

 private:
  Criterion criterion_;
  std::vector<double> counts_;
  double n_ = 0.0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

std::vector<double> NodeValue(std::span<const double> y,
                              std::span<const size_t> rows,
                              const TreeParams& params) {
  if (params.criterion == Criterion::kGini) {
    std::vector<double> freq(params.n_classes, 0.0);
    for (size_t r : rows) freq[static_cast<size_t>(y[r])] += 1.0;
    for (double& f : freq) f /= static_cast<double>(rows.size());
    return freq;
  }
  double sum = 0.0;
  for (size_t r : rows) sum += y[r];
  return {sum / static_cast<double>(rows.size())};
}

Split FindSplit(const Matrix& X, std::span<const double> y,
                std::span<const size_t> rows, const TreeParams& params,
                std::span<const size_t> features) {
  Impurity parent(params.criterion, params.n_classes);
  for (size_t r : rows) parent.Add(y[r]);
  const double parent_imp = parent.Weighted();
  Split best;
  if (parent_imp <= 0.0) return best;
  double best_child = parent_imp;

  std::vector<size_t> order(rows.begin(), rows.end());
  for (size_t f : features) {
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      const double va = X(a, f), vb = X(b, f);
      return va < vb || (va == vb && a < b);
    });
    Impurity left(params.criterion, params.n_classes);
    Impurity right = parent;
    for (size_t i = 0; i + 1 < order.size(); ++i) {
      left.Add(y[order[i]]);
      right.Remove(y[order[i]]);
      const double lo = X(order[i], f), hi = X(order[i + 1], f);
      if (lo == hi) continue;
      const double child = left.Weighted() + right.Weighted();
      // Rounding in the running sums must not break an exact tie.
      if (child < best_child - 1e-12 * parent_imp) {
        double thr = lo + (hi - lo) / 2.0;
        if (thr >= hi) thr = lo;
        best_child = child;
        best = {true, static_cast<int>(f), thr, parent_imp - child};
      }
    }
  }
  if (best.found && !(best.gain > 1e-12 * parent_imp)) best.found = false;
  return best;
}

}  // namespace

int Tree::LeafIndex(std::span<const double> x) const {
  if (nodes.empty()) throw Error(ErrorCode::kUnfittedModel, "empty tree");
  int i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    i = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return i;
}

size_t Tree::LeafCount() const {
  return std::count_if(nodes.begin(), nodes.end(),
                       [](const auto& n) { return n.is_leaf(); });
}

int Tree::Depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int max_depth = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    depth[nodes[i].left] = depth[nodes[i].right] = depth[i] + 1;
    max_depth = std::max(max_depth, depth[i] + 1);
  }
  return max_depth;
}

Tree FitCart(const Matrix& X, std::span<const double> y, const TreeParams& params,
             uint64_t seed) {
  std::vector<size_t> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return FitCart(X, y, rows, params, seed);
}

Tree FitCart(const Matrix& X, std::span<const double> y,
             std::span<const size_t> rows, const TreeParams& params,
             uint64_t seed) {
  if (rows.empty() || X.rows() == 0) {
    throw Error(ErrorCode::kEmptyData, "cannot fit a tree on empty data");
  }
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "X and y differ in length");
  }
  if (params.criterion == Criterion::kGini) {
    for (size_t r : rows) {
      if (y[r] < 0 || y[r] >= params.n_classes || y[r] != static_cast<int>(y[r])) {
        throw Error(ErrorCode::kOutOfRange,
                    "class label out of range: " + std::to_string(y[r]));
      }
    }
  }

  Rng rng(seed);
  const size_t n_features = X.cols();
  const size_t per_split =
      params.features_per_split > 0
          ? std::min<size_t>(params.features_per_split, n_features)
          : n_features;
  auto candidates = [&]() {
    std::vector<size_t> all(n_features);
    std::iota(all.begin(), all.end(), 0);
    if (per_split == n_features) return all;
    // Partial Fisher-Yates, then ascending order for the tie rule.
    for (size_t i = 0; i < per_split; ++i) {
      const size_t j = i + rng.UniformIndex(n_features - i);
      std::swap(all[i], all[j]);
    }
    all.resize(per_split);
    std::sort(all.begin(), all.end());
    return all;
  };

  Tree tree;
  auto make_node = [&](std::span<const size_t> node_rows) {
    TreeNode node;
    node.n_samples = static_cast<int>(node_rows.size());
    node.value = NodeValue(y, node_rows, params);
    tree.nodes.push_back(std::move(node));
    return static_cast<int>(tree.nodes.size() - 1);
  };
  auto evaluate = [&](Pending& p) {
    const bool can_split =
        static_cast<int>(p.rows.size()) >= std::max(2, params.min_samples_split) &&
        (params.max_depth < 0 || p.depth < params.max_depth);
    if (can_split) {
      const auto features = candidates();
      p.split = FindSplit(X, y, p.rows, params, features);
    }
  };
  // Highest gain first; among equal gains, the earlier-created node.
  auto cmp = [](const Pending& a, const Pending& b) {
    if (a.split.gain != b.split.gain) return a.split.gain < b.split.gain;
    return a.node > b.node;
  };
  std::priority_queue<Pending, std::vector<Pending>, decltype(cmp)> frontier(cmp);

  Pending root{make_node(rows), 0, std::vector<size_t>(rows.begin(), rows.end()), {}};
  evaluate(root);
  if (root.split.found) frontier.push(std::move(root));
  size_t leaves = 1;
  while (!frontier.empty()) {
    if (params.max_leaf_nodes > 0 &&
        leaves >= static_cast<size_t>(params.max_leaf_nodes)) {
      break;
    }
    Pending p = frontier.top();
    frontier.pop();
    std::vector<size_t> left_rows, right_rows;
    for (size_t r : p.rows) {
      (X(r, p.split.feature) <= p.split.threshold ? left_rows : right_rows).push_back(r);
    }
    const int left = make_node(left_rows);
    const int right = make_node(right_rows);
    auto& node = tree.nodes[p.node];
    node.feature = p.split.feature;
    node.threshold = p.split.threshold;
    node.left = left;
    node.right = right;
    ++leaves;
    for (auto [id, child_rows] : {std::pair{left, &left_rows}, std::pair{right, &right_rows}}) {
      Pending child{id, p.depth + 1, std::move(*child_rows), {}};
      evaluate(child);
      if (child.split.found) frontier.push(std::move(child));
    }
  }
  return tree;
}

}  // namespace pyro
