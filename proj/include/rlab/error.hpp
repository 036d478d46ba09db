// Copyright 2026 The rlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

enum class ErrorCode {
  kInvalidParams,
  kMalformedCell,
  kDisconnectedInput,
  kCellNotFound,
  kGroupTooLarge,
  kNotAdmissible,
  kDimensionOutOfRange,
  kIndexConstraintViolated,
  kNotACover,
  kBudgetExceeded,
  kSingularMatrix,
  kColoringInconsistent,
  kNotCommuting,
  kNotNormal,
  kNotEquitable,
  kUnsupportedKind,
  kArityMismatch,
  kDimensionUnsupported,
  kIo,
  kNumerical,
};

const char* error_code_name(ErrorCode code);

// Validation errors map to CLI exit code 2, numerical failures to 3.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rlab
