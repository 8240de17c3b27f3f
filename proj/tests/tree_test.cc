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

#include <gtest/gtest.h>

#include "cart_oracle.h"
#include "pyro/error.h"

namespace pyro {
namespace {

TEST(CartTest, MatchesExhaustiveSearchOnSmallFixtures) {
  const auto fixtures = testing::CartFixtures(3000, 12);
  for (size_t i = 0; i < fixtures.size(); ++i) {
    ASSERT_TRUE(testing::CartOracleHolds(fixtures[i])) << "fixture " << i;
  }
}

TEST(CartTest, TieGoesToLowerFeatureThenThreshold) {
  // Both features separate the labels equally well.
  Matrix X(4, 2);
  const double rows[4][2] = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  for (int i = 0; i < 4; ++i) {
    X(i, 0) = rows[i][0];
    X(i, 1) = rows[i][1];
  }
  const std::vector<double> y = {0, 0, 1, 1};
  TreeParams params;
  params.criterion = Criterion::kGini;
  const Tree t = FitCart(X, y, params);
  EXPECT_EQ(t.nodes[0].feature, 0);
  EXPECT_DOUBLE_EQ(t.nodes[0].threshold, 1.5);
  EXPECT_EQ(t.LeafCount(), 2u);
}

TEST(CartTest, LeafLimitAndDepth) {
  Matrix X(16, 1);
  std::vector<double> y(16);
  for (int i = 0; i < 16; ++i) {
    X(i, 0) = i;
    y[i] = i * i;
  }
  TreeParams params;
  params.max_leaf_nodes = 5;
  EXPECT_EQ(FitCart(X, y, params).LeafCount(), 5u);
  params.max_leaf_nodes = 0;
  params.max_depth = 2;
  EXPECT_LE(FitCart(X, y, params).Depth(), 2);
}

TEST(CartTest, NodesKeepTheirMeans) {
  Matrix X(4, 1);
  const std::vector<double> y = {1, 3, 10, 14};
  for (int i = 0; i < 4; ++i) X(i, 0) = i;
  const Tree t = FitCart(X, y, {});
  EXPECT_DOUBLE_EQ(t.nodes[0].value[0], 7.0);
  const double x[] = {0.0};
  EXPECT_DOUBLE_EQ(t.Value(x)[0], 1.0);
}

TEST(CartTest, RejectsBadLabels) {
  Matrix X(2, 1);
  const std::vector<double> y = {0, 3};
  TreeParams params;
  params.criterion = Criterion::kGini;
  EXPECT_THROW(FitCart(X, y, params), Error);
  EXPECT_THROW(FitCart(Matrix(), {}, params), Error);
}

}  // namespace
}  // namespace pyro
