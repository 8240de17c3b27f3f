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

#include "pyro/ensemble.h"

#include <cmath>

#include <gtest/gtest.h>

#include "pyro/error.h"
#include "test_util.h"

namespace pyro {
namespace {

using testing::SmallConfig;
using testing::SplitBenchmark;

TEST(VoteTest, MajorityAndTies) {
  EXPECT_EQ(VoteClassify(std::vector<int>{1, 1, 0}), 1);
  EXPECT_EQ(VoteClassify(std::vector<int>{0, 1, 0}), 0);
  EXPECT_EQ(VoteClassify(std::vector<int>{3, 1, 3}), 3);
  EXPECT_EQ(VoteClassify(std::vector<int>{2, 2, 2}), 2);
  EXPECT_EQ(VoteClassify(std::vector<int>{2, 0, 1}), 0);
}

TEST(PolicyTest, NamesAndDefaults) {
  for (Policy p : {Policy::kMajorityVote, Policy::kSelectFittest, Policy::kMeanAverage}) {
    EXPECT_EQ(PolicyFromName(PolicyName(p)), p);
  }
  EXPECT_EQ(DefaultPolicy(Task::kFireResistance), Policy::kSelectFittest);
  EXPECT_EQ(DefaultPolicy(Task::kSpalling), Policy::kMajorityVote);
  EXPECT_FALSE(PolicyFromName("best").has_value());
}

class EnsembleTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    sp_data_ = new Dataset(SplitBenchmark(300, 5, Task::kSpalling));
    fr_data_ = new Dataset(SplitBenchmark(300, 6, Task::kFireResistance));
    sp_ = new EnsembleModel(FitEnsemble(*sp_data_, Task::kSpalling, SmallConfig(1)));
    fr_ = new EnsembleModel(
        FitEnsemble(*fr_data_, Task::kFireResistance, SmallConfig(2)));
  }
  static void TearDownTestSuite() {
    delete sp_data_;
    delete fr_data_;
    delete sp_;
    delete fr_;
  }
  static Dataset* sp_data_;
  static Dataset* fr_data_;
  static EnsembleModel* sp_;
  static EnsembleModel* fr_;
};

Dataset* EnsembleTest::sp_data_ = nullptr;
Dataset* EnsembleTest::fr_data_ = nullptr;
EnsembleModel* EnsembleTest::sp_ = nullptr;
EnsembleModel* EnsembleTest::fr_ = nullptr;

TEST_F(EnsembleTest, SelectFittestPassesChosenMemberThrough) {
  ASSERT_EQ(fr_->policy, Policy::kSelectFittest);
  ASSERT_TRUE(fr_->chosen.has_value());
  const auto chosen = static_cast<size_t>(*fr_->chosen);
  for (size_t m = 0; m < kNumMembers; ++m) {
    EXPECT_LE(fr_->fitness[chosen].validation, fr_->fitness[m].validation);
    EXPECT_EQ(fr_->fitness[m].metric, "rmse");
  }
  for (const auto& rec : fr_data_->records) {
    const auto p = Predict(*fr_, rec);
    EXPECT_EQ(p.value, p.members[chosen]);
    ASSERT_TRUE(p.rating.has_value());
  }
}

TEST_F(EnsembleTest, MajorityVoteLabelsSpalling) {
  ASSERT_EQ(sp_->policy, Policy::kMajorityVote);
  for (const auto& rec : sp_data_->records) {
    const auto p = Predict(*sp_, rec);
    int yes = 0;
    for (double v : p.members) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      yes += v >= 0.5;
    }
    ASSERT_TRUE(p.label.has_value());
    EXPECT_EQ(*p.label, yes >= 2 ? 1 : 0);
  }
}

TEST_F(EnsembleTest, MeanAverageAveragesMembers) {
  EnsembleModel m = *fr_;
  m.policy = Policy::kMeanAverage;
  const auto p = Predict(m, fr_data_->records[0]);
  EXPECT_NEAR(p.value, (p.members[0] + p.members[1] + p.members[2]) / 3.0, 1e-12);
}

TEST_F(EnsembleTest, BatchMatchesSingleAndSerial) {
  const auto& recs = fr_data_->records;
  const auto serial = PredictBatch(*fr_, recs, Exec::kSerial);
  const auto parallel = PredictBatch(*fr_, recs, Exec::kParallel);
  ASSERT_EQ(serial.size(), recs.size());
  for (size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(serial[i].value, parallel[i].value);
    EXPECT_EQ(serial[i].members, parallel[i].members);
    EXPECT_EQ(serial[i].value, Predict(*fr_, recs[i]).value);
  }
}

TEST_F(EnsembleTest, InvalidRecordIsRejected) {
  auto rec = testing::MakeRecord("bad");
  rec.exposed_faces = 5;
  try {
    Predict(*sp_, rec);
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0].field, "S");
  }
}

TEST_F(EnsembleTest, TrainingIsDeterministic) {
  const auto again = FitEnsemble(*sp_data_, Task::kSpalling, SmallConfig(1));
  for (const auto& rec : sp_data_->records) {
    EXPECT_EQ(Predict(again, rec).members, Predict(*sp_, rec).members);
  }
}

TEST(EnsembleErrors, RejectsBadSetups) {
  const Dataset fr = SplitBenchmark(100, 3, Task::kFireResistance);
  auto config = SmallConfig(1);
  config.policy = Policy::kMajorityVote;
  EXPECT_THROW(FitEnsemble(fr, Task::kFireResistance, config), Error);

  Dataset unsplit = fr;
  unsplit.split.clear();
  EXPECT_THROW(FitEnsemble(unsplit, Task::kFireResistance, SmallConfig(1)), Error);

  Dataset tiny = fr;
  tiny.records.resize(8);
  tiny.split.assign(8, SplitRole::kTrain);
  EXPECT_THROW(FitEnsemble(tiny, Task::kFireResistance, SmallConfig(1)), Error);
}

}  // namespace
}  // namespace pyro
