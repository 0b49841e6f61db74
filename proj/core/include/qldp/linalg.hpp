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

#include <complex>

#include <Eigen/Dense>

namespace qldp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest singular value.
double operator_norm(const CMatrix& a);

/// Column-stacking vectorization: vec(A)[i + d*j] = A(i, j).
CVector vectorize(const CMatrix& a);
CMatrix unvectorize(const CVector& v, Index rows, Index cols);

inline CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

/// Hilbert-Schmidt pairing Tr(a^dagger b).
inline Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

}  // namespace qldp
