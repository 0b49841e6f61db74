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


#include "qldp/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qldp/error.hpp"

namespace qldp {

KrausFamily example1(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "example1 needs 0 <= delta <= 1");
  }
  const double eps = std::sqrt(1.0 - delta * delta);
  CMatrix v0(2, 2);
  CMatrix v1(2, 2);
  v0 << 0.0, delta, 0.0, eps;
  v1 << eps, 0.0, delta, 0.0;
  return KrausFamily({v0, v1});
}

KrausFamily example2(double omega) {
  if (!(omega >= 0.0 && omega <= 2.0 * std::numbers::pi)) {
    throw Error(ErrorCode::ParamOutOfRange, "example2 needs 0 <= omega <= 2 pi");
  }
  const double s = std::sin(omega);
  const double c = std::cos(omega);
  const Complex i_s(0.0, s);
  const double norm = 1.0 / std::sqrt(2.0);
  CMatrix v0(2, 2);
  CMatrix v1(2, 2);
  v0 << 1.0, 0.0, i_s, c;
  v1 << c, i_s, 0.0, 1.0;
  return KrausFamily({v0 * norm, v1 * norm});
}

KrausFamily example_model(std::string_view name, double param) {
  if (name == "example1") return example1(param);
  if (name == "example2") return example2(param);
  throw Error(ErrorCode::UnknownModel, "unknown model '" + std::string(name) + "'");
}

std::pair<double, double> example_param_range(std::string_view name) {
  if (name == "example1") return {0.0, 1.0};
  if (name == "example2") return {0.0, 2.0 * std::numbers::pi};
  throw Error(ErrorCode::UnknownModel, "unknown model '" + std::string(name) + "'");
}

}  // namespace qldp
