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


#ifndef PYRO_BUNDLE_H_
#define PYRO_BUNDLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pyro/ensemble.h"

namespace pyro {

inline constexpr int kFormatVersion = 1;

struct TrainingMetadata {
  uint64_t seed = 0;
  double split_fraction = 0.7;
  bool stratified = true;
  std::map<std::string, size_t> provenance_counts;
  // Left empty by default so that repeated training writes identical files.
  std::optional<std::string> created_at;
};

struct ModelBundle {
  EnsembleModel model;
  TrainingMetadata metadata;
  std::string fingerprint;  // schema fingerprint at training time
};

ModelBundle MakeBundle(EnsembleModel model, TrainingMetadata metadata);

std::string SerializeBundle(const ModelBundle& bundle);
// Throws CorruptFile, VersionMismatch or SchemaFingerprintMismatch.
ModelBundle ParseBundle(const std::string& text);

void SaveBundle(const ModelBundle& bundle, const std::string& path);
ModelBundle LoadBundle(const std::string& path);

}  // namespace pyro

#endif  // PYRO_BUNDLE_H_
