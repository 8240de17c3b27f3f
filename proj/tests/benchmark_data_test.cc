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

#include "pyro/benchmark_data.h"

#include <cmath>

#include <gtest/gtest.h>

#include "pyro/error.h"
#include "pyro/pipeline.h"
#include "test_util.h"

namespace pyro {
namespace {

TEST(BenchmarkDataTest, SameSeedSameRecords) {
  const Dataset a = testing::Benchmark(100, 3);
  const Dataset b = testing::Benchmark(100, 3);
  EXPECT_EQ(a.records, b.records);
  EXPECT_NE(a.records, testing::Benchmark(100, 4).records);
  EXPECT_EQ(a.records[0].id, "B00001");
}

TEST(BenchmarkDataTest, RecordsAreValidAndInRange) {
  BenchmarkSpec spec;
  spec.n = 2000;
  spec.seed = 8;
  const Dataset ds = GenerateBenchmark(spec);
  const auto schema = FeatureSchema::ForTask(Task::kFireResistance);
  for (const auto& r : ds.records) {
    ASSERT_FALSE(HasErrors(ValidateRecord(r, schema, false)));
    ASSERT_TRUE(r.spalled.has_value());
    ASSERT_GE(*r.fire_resistance_min, 20.0);
    ASSERT_LE(*r.fire_resistance_min, 636.0);
  }
  // Marginal means land near their targets (clamping shifts them slightly).
  const Feature cont[] = {Feature::kW, Feature::kR, Feature::kL, Feature::kFc,
                          Feature::kFy, Feature::kC};
  for (size_t c = 0; c < 6; ++c) {
    std::vector<double> v;
    for (const auto& r : ds.records) v.push_back(*r.Value(cont[c]));
    const StatsRow s = ComputeStats(v);
    EXPECT_NEAR(s.mean, spec.marginals[c].mean, 0.1 * spec.marginals[c].std)
        << FeatureName(cont[c]);
    EXPECT_GE(s.min, spec.marginals[c].min);
    EXPECT_LE(s.max, spec.marginals[c].max);
  }
}

TEST(BenchmarkDataTest, RulesShowInTheData) {
  const Dataset ds = testing::Benchmark(3000, 5);
  double spall_hi = 0, n_hi = 0, spall_lo = 0, n_lo = 0;
  for (const auto& r : ds.records) {
    if (r.fc_mpa > 60) {
      spall_hi += *r.spalled;
      ++n_hi;
    } else if (r.fc_mpa < 35) {
      spall_lo += *r.spalled;
      ++n_lo;
    }
  }
  EXPECT_GT(spall_hi / n_hi, spall_lo / n_lo);
}

TEST(BenchmarkDataTest, InfeasibleSpecs) {
  BenchmarkSpec spec;
  spec.n = 10;
  EXPECT_THROW(GenerateBenchmark(spec), Error);
  spec.n = 100;
  spec.restraint_probs = {0.5, 0.5, 0.5};
  EXPECT_THROW(GenerateBenchmark(spec), Error);
  spec = {};
  spec.marginals[0].mean = 1e5;
  try {
    GenerateBenchmark(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleSpec);
  }
}

TEST(PipelineTest, HeldOutIsTheTestSplit) {
  const Dataset ds = testing::Benchmark(200, 6);
  TrainOptions opts;
  opts.ensemble = testing::SmallConfig(1);
  const auto bundle = TrainModel(ds, Task::kSpalling, opts);
  const Dataset held = HeldOutRecords(ds, bundle);
  EXPECT_NEAR(static_cast<double>(held.records.size()), 60.0, 1.0);
  const auto report = Evaluate(bundle.model, held);
  EXPECT_EQ(report.n, held.records.size());
  for (const char* src : {"ensemble", "forest", "gbt", "mlp"}) {
    ASSERT_TRUE(report.metrics.count(src));
    EXPECT_TRUE(report.metrics.at(src).count("log_loss"));
  }
  EXPECT_EQ(bundle.metadata.provenance_counts.at("real"), 200u);
}

}  // namespace
}  // namespace pyro
