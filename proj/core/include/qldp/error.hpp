// Copyright 2026 The qldp Authors
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
#include <string_view>

namespace qldp {

enum class ErrorCode {
  InvalidArgument,
  NotUnitary,
  BadDimensions,
  NormalizationViolation,
  DimensionMismatch,
  EigenSolverFailure,
  NonConvergence,
  NotPrimitive,
  SizeCapExceeded,
  DegeneratePerronEigenvalue,
  NotOnSimplex,
  NumericalUnderflow,
  WindowTooLong,
  UnknownModel,
  ParamOutOfRange,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code identifies the contract
/// that was violated; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Process exit code used by the CLI for an error category:
/// 2 validation, 3 non-primitive, 4 numerical, 1 anything else.
int exit_code_for(ErrorCode code);

}  // namespace qldp
