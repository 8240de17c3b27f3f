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

#ifndef PYRO_RATING_H_
#define PYRO_RATING_H_

#include <optional>
#include <string_view>

namespace pyro {

// Fire rating classes, binned from fire resistance in minutes:
// SubHour < 60 <= R1 < 120 <= R2 < 180 <= R3 < 240 <= R4.
enum class RatingClass { kSubHour = 0, kR1 = 1, kR2 = 2, kR3 = 3, kR4 = 4 };
inline constexpr int kNumRatingClasses = 5;

// Throws NegativeInput for negative minutes.
RatingClass ClassifyRating(double fr_minutes);
std::string_view RatingClassName(RatingClass c);
std::optional<RatingClass> RatingClassFromName(std::string_view name);

}  // namespace pyro

#endif  // PYRO_RATING_H_
