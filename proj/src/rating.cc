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

#include "pyro/rating.h"

#include <array>
#include <cmath>

#include "pyro/error.h"

namespace pyro {
namespace {
constexpr std::array<std::string_view, kNumRatingClasses> kNames = {
    "SubHour", "R1", "R2", "R3", "R4"};
}  // namespace

RatingClass ClassifyRating(double fr_minutes) {
  if (!(fr_minutes >= 0.0)) {
    throw Error(ErrorCode::kNegativeInput,
                "fire resistance must be non-negative");
  }
  if (fr_minutes < 60.0) return RatingClass::kSubHour;
  if (fr_minutes < 120.0) return RatingClass::kR1;
  if (fr_minutes < 180.0) return RatingClass::kR2;
  if (fr_minutes < 240.0) return RatingClass::kR3;
  return RatingClass::kR4;
}

std::string_view RatingClassName(RatingClass c) {
  return kNames[static_cast<size_t>(c)];
}

std::optional<RatingClass> RatingClassFromName(std::string_view name) {
  for (size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<RatingClass>(i);
  }
  return std::nullopt;
}

}  // namespace pyro
