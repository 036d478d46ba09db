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

#include "rlab/error.hpp"

namespace rlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kMalformedCell: return "MalformedCell";
    case ErrorCode::kDisconnectedInput: return "DisconnectedInput";
    case ErrorCode::kCellNotFound: return "CellNotFound";
    case ErrorCode::kGroupTooLarge: return "GroupTooLarge";
    case ErrorCode::kNotAdmissible: return "NotAdmissible";
    case ErrorCode::kDimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::kIndexConstraintViolated: return "IndexConstraintViolated";
    case ErrorCode::kNotACover: return "NotACover";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kColoringInconsistent: return "ColoringInconsistent";
    case ErrorCode::kNotCommuting: return "NotCommuting";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kNotEquitable: return "NotEquitable";
    case ErrorCode::kUnsupportedKind: return "UnsupportedKind";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kDimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kNumerical: return "NumericalFailure";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::kNotCommuting || code == ErrorCode::kNotNormal ||
         code == ErrorCode::kNumerical;
}

}  // namespace rlab
