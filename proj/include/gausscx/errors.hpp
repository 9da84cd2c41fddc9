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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gausscx {

/// Failure categories surfaced by the library. The CLI maps these onto exit
/// codes, so the set is part of the public contract.
enum class ErrorCode {
  kNotPure,
  kSingularInput,
  kKindMismatch,
  kGroupViolation,
  kNonFinite,
  kBranchCut,
  kSingular,
  kDimensionMismatch,
  kLengthMismatch,
  kDisplacementPresent,
  kNonFiniteFactor,
  kPotentialTooLarge,
  kChartBoundary,
  kStepTooCoarse,
  kInvalidArgument,
  kNoConvergence,
  kParseError,
};

/// Stable identifier for an error code, e.g. "NotPure".
std::string_view error_name(ErrorCode code);

/// Broad class of a failure: input validation vs. a numeric-domain problem.
enum class ErrorClass { kValidation, kNumericDomain, kConvergence };
ErrorClass error_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace gausscx
