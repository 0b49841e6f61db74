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


#include "qldp/error.hpp"

namespace qldp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::NormalizationViolation: return "NormalizationViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::DegeneratePerronEigenvalue: return "DegeneratePerronEigenvalue";
    case ErrorCode::NotOnSimplex: return "NotOnSimplex";
    case ErrorCode::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotUnitary:
    case ErrorCode::BadDimensions:
    case ErrorCode::NormalizationViolation:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotOnSimplex:
    case ErrorCode::WindowTooLong:
    case ErrorCode::UnknownModel:
    case ErrorCode::ParamOutOfRange:
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::NotPrimitive:
      return 3;
    case ErrorCode::EigenSolverFailure:
    case ErrorCode::NonConvergence:
    case ErrorCode::DegeneratePerronEigenvalue:
    case ErrorCode::NumericalUnderflow:
    case ErrorCode::SizeCapExceeded:
      return 4;
    case ErrorCode::InvalidArgument:
    case ErrorCode::IoError:
      return 1;
  }
  return 1;
}

}  // namespace qldp
