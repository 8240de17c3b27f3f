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

#include "pyro/bundle.h"

#include <filesystem>

#include <gtest/gtest.h>
#include <json.hpp>

#include "pyro/error.h"
#include "pyro/pipeline.h"
#include "test_util.h"

namespace pyro {
namespace {

class BundleTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    data_ = new Dataset(testing::Benchmark(200, 11));
    TrainOptions opts;
    opts.ensemble = testing::SmallConfig(4);
    bundle_ = new ModelBundle(TrainModel(*data_, Task::kSpalling, opts));
  }
  static void TearDownTestSuite() {
    delete data_;
    delete bundle_;
  }
  static Dataset* data_;
  static ModelBundle* bundle_;
};

Dataset* BundleTest::data_ = nullptr;
ModelBundle* BundleTest::bundle_ = nullptr;

void ExpectCode(const std::string& text, ErrorCode code) {
  try {
    ParseBundle(text);
    FAIL() << "parsed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST_F(BundleTest, RoundTripIsExact) {
  const std::string text = SerializeBundle(*bundle_);
  const ModelBundle back = ParseBundle(text);
  EXPECT_EQ(SerializeBundle(back), text);
  for (const auto& rec : data_->records) {
    const auto a = Predict(bundle_->model, rec);
    const auto b = Predict(back.model, rec);
    ASSERT_EQ(a.value, b.value);
    ASSERT_EQ(a.members, b.members);
    ASSERT_EQ(a.label, b.label);
  }
  EXPECT_EQ(back.metadata.provenance_counts, bundle_->metadata.provenance_counts);
  EXPECT_EQ(back.fingerprint, FeatureSchema::ForTask(Task::kSpalling).Fingerprint());
}

TEST_F(BundleTest, SaveAndLoadThroughAFile) {
  const auto path =
      (std::filesystem::temp_directory_path() / "pyro_bundle_test.json").string();
  SaveBundle(*bundle_, path);
  EXPECT_EQ(SerializeBundle(LoadBundle(path)), SerializeBundle(*bundle_));
  std::filesystem::remove(path);
  EXPECT_THROW(LoadBundle(path), Error);
}

TEST_F(BundleTest, FingerprintMismatchIsReported) {
  auto j = nlohmann::json::parse(SerializeBundle(*bundle_));
  j["schema_fingerprint"] = "0000000000000000";
  ExpectCode(j.dump(), ErrorCode::kSchemaFingerprintMismatch);
}

TEST_F(BundleTest, VersionMismatchIsReported) {
  auto j = nlohmann::json::parse(SerializeBundle(*bundle_));
  j["format_version"] = kFormatVersion + 1;
  ExpectCode(j.dump(), ErrorCode::kVersionMismatch);
}

TEST_F(BundleTest, TruncationIsCorruption) {
  const std::string text = SerializeBundle(*bundle_);
  for (size_t cut : {size_t{0}, size_t{10}, text.size() / 2, text.size() - 3}) {
    ExpectCode(text.substr(0, cut), ErrorCode::kCorruptFile);
  }
}

TEST_F(BundleTest, BrokenStructureIsCorruption) {
  auto j = nlohmann::json::parse(SerializeBundle(*bundle_));
  j["members"].erase("gbt");
  ExpectCode(j.dump(), ErrorCode::kCorruptFile);
  auto k = nlohmann::json::parse(SerializeBundle(*bundle_));
  k["ensemble"]["policy"] = "vote_harder";
  ExpectCode(k.dump(), ErrorCode::kCorruptFile);
}

}  // namespace
}  // namespace pyro
