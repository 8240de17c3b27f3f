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

#include "pyro/codal.h"

#include <cmath>

#include <gtest/gtest.h>

#include "codal_oracles.h"
#include "pyro/error.h"
#include "test_util.h"

namespace pyro {
namespace {

TEST(Ec2Test, MatchesHandCalculation) {
  for (const auto& c : testing::Ec2Cases()) {
    EXPECT_NEAR(Ec2FireResistance(c.params).minutes, c.minutes, 1e-9);
  }
}

TEST(Ec2Test, ShortLengthIsClamped) {
  const auto c = testing::Ec2Cases()[3];
  EXPECT_TRUE(Ec2FireResistance(c.params).length_clamped);
  Ec2Params p = c.params;
  p.effective_length_m = 2.0;
  EXPECT_DOUBLE_EQ(Ec2FireResistance(p).minutes, c.minutes);
  EXPECT_FALSE(Ec2FireResistance(p).length_clamped);
}

TEST(Ec2Test, DecreasesWithLoadRatio) {
  Ec2Params p = testing::Ec2Cases()[0].params;
  double prev = INFINITY;
  for (double mu = 0.05; mu <= 0.951; mu += 0.05) {
    p.mu_fi = mu;
    const double r = Ec2FireResistance(p).minutes;
    EXPECT_LE(r, prev);
    prev = r;
  }
}

TEST(Ec2Test, ValidityRange) {
  Ec2Params p;
  p.axis_distance_mm = 20.0;
  EXPECT_THROW(Ec2FireResistance(p), Error);
  p.axis_distance_mm = 40.0;
  p.effective_length_m = 6.5;
  try {
    Ec2FireResistance(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfValidityRange);
  }
}

TEST(Ec2Test, NonPositiveSumGivesZero) {
  Ec2Params p;
  p.mu_fi = 1.0;
  p.omega = 0.0;
  p.axis_distance_mm = 25.0;
  p.effective_length_m = 6.0;
  p.b_prime_mm = 150.0;
  EXPECT_EQ(Ec2FireResistance(p).minutes, 0.0);
}

TEST(As3600Test, MatchesHandCalculation) {
  for (const auto& c : testing::As3600Cases()) {
    EXPECT_NEAR(As3600FireResistance(c.params, As3600Profile::Literal()), c.literal,
                1e-9 * c.literal);
    EXPECT_NEAR(As3600FireResistance(c.params, As3600Profile::Corrected()),
                c.corrected, 1e-9);
  }
}

TEST(As3600Test, KFollowsCover) {
  EXPECT_EQ(As3600K(30.0), 1.47);
  EXPECT_EQ(As3600K(34.9), 1.47);
  EXPECT_EQ(As3600K(35.0), 1.48);
  EXPECT_EQ(As3600K(50.0), 1.48);
}

TEST(As3600Test, RejectsNonPositiveInputs) {
  As3600Params p;
  p.n_kn = 0.0;
  try {
    As3600FireResistance(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveInput);
  }
}

TEST(MappingTest, RecordToFormulaInputs) {
  const auto rec = testing::MakeRecord("m");
  CodalMapping mapping;
  const Ec2Params ec2 = MapEc2(rec, mapping);
  EXPECT_DOUBLE_EQ(ec2.axis_distance_mm, 50.0);
  EXPECT_DOUBLE_EQ(ec2.effective_length_m, 3.9 * 0.7);
  const As3600Params as = MapAs3600(rec, mapping);
  EXPECT_EQ(as.k, 1.48);
  EXPECT_DOUBLE_EQ(as.b_mm, 350.0);
  EXPECT_DOUBLE_EQ(as.le_mm, 3900.0 * 0.7);
  EXPECT_DOUBLE_EQ(as.n_kn, 1500.0);
}

TEST(MappingTest, MissingLengthFailsToMap) {
  auto rec = testing::MakeRecord("m");
  rec.length_m.reset();
  try {
    MapEc2(rec, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMappingFailure);
  }
}

TEST(CompareTest, SkipsUnmappableWhenAsked) {
  Dataset ds = testing::Benchmark(60, 2);
  ds.records[0].load_kn = 0.0;
  CodalMapping mapping;
  EXPECT_THROW(CodalCompare(ds, CodalMethod::kAs3600, mapping,
                            As3600Profile::Corrected()),
               Error);
  mapping.skip_unmappable = true;
  const auto report =
      CodalCompare(ds, CodalMethod::kAs3600, mapping, As3600Profile::Corrected());
  EXPECT_EQ(report.skipped.size() + report.rows.size(), 60u);
  EXPECT_FALSE(report.skipped.empty());
  for (const auto& row : report.rows) {
    EXPECT_DOUBLE_EQ(row.residual, row.observed - row.predicted);
  }
  EXPECT_THROW(CodalCompare(ds, CodalMethod::kEnsemble), Error);
}

TEST(CompareTest, MethodNames) {
  EXPECT_EQ(CodalMethodFromName("EC2"), CodalMethod::kEc2);
  EXPECT_EQ(CodalMethodFromName("as3600"), CodalMethod::kAs3600);
  EXPECT_EQ(CodalMethodName(CodalMethod::kEnsemble), "Ensemble");
}

}  // namespace
}  // namespace pyro
