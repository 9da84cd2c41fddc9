// Copyright 2026 The gausscx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gausscx/errors.hpp"

namespace gausscx {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPure: return "NotPure";
    case ErrorCode::kSingularInput: return "SingularInput";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kGroupViolation: return "GroupViolation";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kBranchCut: return "BranchCut";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDisplacementPresent: return "DisplacementPresent";
    case ErrorCode::kNonFiniteFactor: return "NonFiniteFactor";
    case ErrorCode::kPotentialTooLarge: return "PotentialTooLarge";
    case ErrorCode::kChartBoundary: return "ChartBoundary";
    case ErrorCode::kStepTooCoarse: return "StepTooCoarse";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBranchCut:
    case ErrorCode::kSingular:
    case ErrorCode::kNonFiniteFactor:
    case ErrorCode::kPotentialTooLarge:
    case ErrorCode::kChartBoundary:
    case ErrorCode::kStepTooCoarse:
      return ErrorClass::kNumericDomain;
    case ErrorCode::kNoConvergence:
      return ErrorClass::kConvergence;
    default:
      return ErrorClass::kValidation;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace gausscx
