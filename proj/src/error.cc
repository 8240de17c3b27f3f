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

#include "pyro/error.h"

namespace pyro {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingHeader: return "MissingHeader";
    case ErrorCode::kBadNumeric: return "BadNumeric";
    case ErrorCode::kUnknownEnum: return "UnknownEnum";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kMissingTarget: return "MissingTarget";
    case ErrorCode::kMissingSplit: return "MissingSplit";
    case ErrorCode::kMissingFeature: return "MissingFeature";
    case ErrorCode::kMissingLabel: return "MissingLabel";
    case ErrorCode::kWrongProvenance: return "WrongProvenance";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kEmptyData: return "EmptyData";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kUnfittedModel: return "UnfittedModel";
    case ErrorCode::kTooManyFeatures: return "TooManyFeatures";
    case ErrorCode::kEmptyBackground: return "EmptyBackground";
    case ErrorCode::kOutOfValidityRange: return "OutOfValidityRange";
    case ErrorCode::kNonPositiveInput: return "NonPositiveInput";
    case ErrorCode::kNegativeInput: return "NegativeInput";
    case ErrorCode::kMappingFailure: return "MappingFailure";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kSchemaFingerprintMismatch: return "SchemaFingerprintMismatch";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kInfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pyro
