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

#ifndef PYRO_ERROR_H_
#define PYRO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pyro {

// Error categories surfaced by the library. The CLI and the HTTP service map
// these onto exit codes / status codes and a machine-readable name.
enum class ErrorCode {
  kMissingHeader,
  kBadNumeric,
  kUnknownEnum,
  kDuplicateId,
  kInvalidRecord,
  kInsufficientData,
  kMissingTarget,
  kMissingSplit,
  kMissingFeature,
  kMissingLabel,
  kWrongProvenance,
  kDimensionMismatch,
  kShapeMismatch,
  kOutOfRange,
  kEmptyData,
  kEmptyInput,
  kLengthMismatch,
  kSingleClass,
  kZeroVariance,
  kUnfittedModel,
  kTooManyFeatures,
  kEmptyBackground,
  kOutOfValidityRange,
  kNonPositiveInput,
  kNegativeInput,
  kMappingFailure,
  kValidationFailed,
  kVersionMismatch,
  kSchemaFingerprintMismatch,
  kCorruptFile,
  kInfeasibleSpec,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Errors tied to a position in a CSV input. Row numbers are 1-based data rows
// (the header is row 0); column is the header name.
class DataError : public Error {
 public:
  DataError(ErrorCode code, int row, std::string column,
            const std::string& message)
      : Error(code, "row " + std::to_string(row) +
                        (column.empty() ? "" : ", column " + column) + ": " +
                        message),
        row_(row),
        column_(std::move(column)) {}

  int row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  int row_;
  std::string column_;
};

}  // namespace pyro

#endif  // PYRO_ERROR_H_
