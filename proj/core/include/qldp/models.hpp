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

#include <string_view>

#include "qldp/kraus.hpp"

namespace qldp {

/// Two-outcome qubit chain V_0 = |u><1|, V_1 = |d><0| with
/// |u> = delta|0> + eps|1>, |d> = eps|0> + delta|1>, eps = sqrt(1 - delta^2).
/// Interpolates between the sigma_z pinching (delta = 0) and the cyclic
/// flip (delta = 1). Requires 0 <= delta <= 1.
KrausFamily example1(double delta);

/// Two-outcome qubit chain
///   V_0 = [[1, 0], [i sin w, cos w]] / sqrt(2)
///   V_1 = [[cos w, i sin w], [0, 1]] / sqrt(2)
/// whose level-1 statistics do not depend on w in (0, pi). Requires
/// 0 <= w <= 2 pi.
KrausFamily example2(double omega);

/// "example1" or "example2"; UnknownModel / ParamOutOfRange otherwise.
KrausFamily example_model(std::string_view name, double param);

/// Admissible parameter range of a built-in model.
std::pair<double, double> example_param_range(std::string_view name);

}  // namespace qldp
