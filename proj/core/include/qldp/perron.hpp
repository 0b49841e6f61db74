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

#include <cstddef>
#include <functional>

#include "qldp/linalg.hpp"
#include "qldp/tolerances.hpp"

namespace qldp {

enum class PerronMethod { Auto, Dense, Power };

/// Dominant eigenvalue of a positive map with its right and left
/// eigenvectors.
///
/// The right vector has unit norm and its largest-modulus component is real
/// positive; the left vector is scaled so that <left, right> = 1.
struct PerronData {
  double spectral_radius = 0.0;
  CVector right;
  CVector left;
  double gap = 0.0;  // r - |lambda_2|; an estimate for the power method
  std::size_t iterations = 0;
  PerronMethod method = PerronMethod::Dense;
};

/// Matrix-free operator for the power method.
struct LinearMap {
  Index dim = 0;
  std::function<CVector(const CVector&)> apply;
  std::function<CVector(const CVector&)> apply_adjoint;
  CVector start;  // positive starting element, e.g. the unit
};

/// Auto picks Dense up to tol.dense_limit and Power above it.
PerronData perron_data(const CMatrix& matrix, PerronMethod method = PerronMethod::Auto,
                       const Tolerances& tol = {});

/// Power iteration with tol.power_tol relative residual and
/// tol.power_max_iter iterations; NonConvergence otherwise.
PerronData perron_data(const LinearMap& map, const Tolerances& tol = {});

}  // namespace qldp
