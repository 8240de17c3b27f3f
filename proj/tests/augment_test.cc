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
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "pyro/error.h"
#include "pyro/rng.h"
#include "test_util.h"

namespace pyro {
namespace {

using testing::Benchmark;
using testing::MakeRecord;

TEST(InterpolateTest, StaysInsideBoundingBox) {
  Rng rng(17);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> a(5), b(5);
    for (size_t i = 0; i < 5; ++i) {
      a[i] = rng.Normal() * 100.0;
      b[i] = rng.Normal() * 100.0;
    }
    const double u = rng.Uniform();
    const auto x = SmoteInterpolate(a, b, u);
    for (size_t i = 0; i < 5; ++i) {
      ASSERT_GE(x[i], std::min(a[i], b[i]));
      ASSERT_LE(x[i], std::max(a[i], b[i]));
    }
  }
}

TEST(InterpolateTest, EndpointsAndCategoricals) {
  const std::vector<double> a = {1.0, 2.0, 3.0};
  const std::vector<double> b = {0.1, 7.0, -3.0};
  EXPECT_EQ(SmoteInterpolate(a, b, 0.0), a);
  EXPECT_EQ(SmoteInterpolate(a, b, 1.0), b);
  const bool cat[] = {false, true, false};
  const auto x = SmoteInterpolate(a, b, 0.5, cat);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
  EXPECT_DOUBLE_EQ(x[0], 0.55);
}

TEST(InterpolateTest, RejectsBadInput) {
  const std::vector<double> a = {1.0, 2.0};
  const std::vector<double> b = {1.0};
  EXPECT_THROW(SmoteInterpolate(a, b, 0.5), Error);
  EXPECT_THROW(SmoteInterpolate(a, a, 1.5), Error);
}

Dataset SpallingFixture() {
  Dataset ds;
  const double widths[] = {300, 310, 500, 520, 700, 720};
  for (int i = 0; i < 6; ++i) {
    auto r = MakeRecord("c" + std::to_string(i), widths[i]);
    r.spalled = i == 1 || i == 4;
    ds.records.push_back(r);
  }
  ds.schema = FeatureSchema::ForTask(Task::kSpalling);
  return ds;
}

TEST(PairTest, NearestNeighboursPairFirst) {
  const Dataset ds = SpallingFixture();
  const PairPlan plan = BuildPairs(ds, 3, 1);
  ASSERT_EQ(plan.pairs.size(), 3u);
  std::set<std::pair<std::string, std::string>> got(plan.pairs.begin(),
                                                    plan.pairs.end());
  EXPECT_TRUE(got.count({"c0", "c1"}));
  EXPECT_TRUE(got.count({"c2", "c3"}));
  EXPECT_TRUE(got.count({"c4", "c5"}));
}

TEST(PairTest, NoRepeatsBeforeEveryRecordIsUsed) {
  const Dataset ds = SpallingFixture();
  const PairPlan plan = BuildPairs(ds, 3, 1);
  std::set<std::string> seen;
  for (const auto& [a, b] : plan.pairs) {
    EXPECT_TRUE(seen.insert(a).second);
    EXPECT_TRUE(seen.insert(b).second);
    EXPECT_LT(a, b);
  }
  EXPECT_EQ(BuildPairs(ds, 10, 1).pairs.size(), 10u);
}

TEST(PairTest, SynthesisAveragesAndOrsLabels) {
  const Dataset ds = SpallingFixture();
  const PairPlan plan = BuildPairs(ds, 3, 1);
  const auto result = PairSynthesize(ds, plan);
  ASSERT_EQ(result.records.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    const auto& rec = result.records[i];
    const auto& [ia, ib] = plan.pairs[i];
    const auto& a = ds.records[std::stoi(ia.substr(1))];
    const auto& b = ds.records[std::stoi(ib.substr(1))];
    EXPECT_EQ(rec.provenance, Provenance::kSynthetic);
    EXPECT_DOUBLE_EQ(rec.width_mm, 0.5 * (a.width_mm + b.width_mm));
    EXPECT_EQ(*rec.spalled, *a.spalled || *b.spalled);
    EXPECT_FALSE(rec.fire_resistance_min.has_value());
  }
}

TEST(PairTest, CategoricalDisagreementIsNoted) {
  Dataset ds = SpallingFixture();
  ds.records[1].restraint = Restraint::kPinnedPinned;
  const auto result = PairSynthesize(ds, BuildPairs(ds, 3, 1));
  ASSERT_EQ(result.notes.size(), 1u);
  EXPECT_NE(result.notes[0].find("K"), std::string::npos);
  EXPECT_EQ(result.records[0].restraint, ds.records[0].restraint);
}

TEST(PairTest, FireResistanceNeedsOptIn) {
  const Dataset ds = SpallingFixture();
  const PairPlan plan = BuildPairs(ds, 2, 1, Task::kFireResistance);
  EXPECT_THROW(PairSynthesize(ds, plan), Error);
  SynthesisOptions opt;
  opt.allow_fire_resistance = true;
  const auto result = PairSynthesize(ds, plan, opt);
  EXPECT_DOUBLE_EQ(*result.records[0].fire_resistance_min, 180.0);
}

TEST(SmoteTest, RecordsLieBetweenParents) {
  const Dataset ds = Benchmark(200, 8);
  const PairPlan plan = BuildPairs(ds, 150, 2);
  const auto result = SmoteSynthesize(ds, plan, 5);
  std::map<std::string, const ColumnRecord*> index;
  for (const auto& r : ds.records) index[r.id] = &r;
  for (size_t i = 0; i < plan.pairs.size(); ++i) {
    const auto& a = *index[plan.pairs[i].first];
    const auto& b = *index[plan.pairs[i].second];
    const auto& s = result.records[i];
    for (Feature f : TaskFeatures(Task::kSpalling)) {
      const double lo = std::min(*a.Value(f), *b.Value(f));
      const double hi = std::max(*a.Value(f), *b.Value(f));
      if (*s.Value(f) < lo || *s.Value(f) > hi) {
        ASSERT_EQ(*s.Value(f), *a.Value(f)) << FeatureName(f);
      }
    }
    EXPECT_EQ(*s.spalled, *a.spalled || *b.spalled);
  }
}

TEST(SmoteTest, BatchMeansTrackRealMeans) {
  const Dataset ds = Benchmark(400, 21);
  const auto result = PairSynthesize(ds, BuildPairs(ds, 200, 2));
  for (Feature f : {Feature::kW, Feature::kFc, Feature::kC, Feature::kP}) {
    std::vector<double> real, syn;
    for (const auto& r : ds.records) real.push_back(*r.Value(f));
    for (const auto& r : result.records) syn.push_back(*r.Value(f));
    const StatsRow rs = ComputeStats(real);
    const StatsRow ss = ComputeStats(syn);
    const double se = rs.std / std::sqrt(static_cast<double>(syn.size()));
    EXPECT_LE(std::abs(ss.mean - rs.mean), 2.0 * se) << FeatureName(f);
  }
}

TEST(IngestTest, RequiresAugmentedProvenance) {
  const Dataset ds = SpallingFixture();
  auto extra = MakeRecord("aug1");
  extra.provenance = Provenance::kAugmented;
  std::ostringstream good;
  WriteCsv(std::vector<ColumnRecord>{extra}, good);
  std::istringstream in(good.str());
  const Dataset merged = IngestAugmented(ds, in);
  EXPECT_EQ(merged.records.size(), 7u);
  EXPECT_EQ(merged.CountProvenance(Provenance::kAugmented), 1u);

  extra.provenance = Provenance::kReal;
  extra.id = "aug2";
  std::ostringstream bad;
  WriteCsv(std::vector<ColumnRecord>{extra}, bad);
  std::istringstream bad_in(bad.str());
  EXPECT_THROW(IngestAugmented(ds, bad_in), Error);
}

}  // namespace
}  // namespace pyro
