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

#include <vector>

#include "qldp/linalg.hpp"

namespace qldp {

/// The defining data of a quantum Markov chain: k complex d x d Kraus
/// operators V_0..V_{k-1}. Outcomes are labelled 0..k-1.
///
/// Construction checks shapes only (d >= 1, k >= 2, all d x d). The
/// normalization sum_i V_i^dagger V_i = 1 is checked by validate_kraus or
/// require_normalized, so that malformed families can still be inspected.
class KrausFamily {
 public:
  explicit KrausFamily(std::vector<CMatrix> kraus);

  int dim() const noexcept { return dim_; }
  int outcomes() const noexcept { return static_cast<int>(kraus_.size()); }

  const CMatrix& operator[](int i) const { return kraus_[static_cast<std::size_t>(i)]; }
  const std::vector<CMatrix>& operators() const noexcept { return kraus_; }

 private:
  int dim_;
  std::vector<CMatrix> kraus_;
};

struct KrausValidation {
  double residual = 0.0;  // operator norm of sum V^dagger V - 1
  bool passed = false;
};

KrausValidation validate_kraus(const KrausFamily& fam, double norm_tol = 1e-10);

/// Throws NormalizationViolation naming the residual.
void require_normalized(const KrausFamily& fam, double norm_tol = 1e-10);

/// V_i = <i| U |chi>, with U acting on C^d (x) C^k in system-major order
/// (composite index = system * k + ancilla).
KrausFamily kraus_from_unitary(const CMatrix& unitary, const CVector& chi, int d, int k,
                               double norm_tol = 1e-10);

/// Unit vector in C^d.
class PureState {
 public:
  explicit PureState(CVector amplitudes);

  static PureState basis(int d, int i);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }

 private:
  CVector amplitudes_;
};

/// Hermitian, unit trace, positive semidefinite d x d matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix maximally_mixed(int d);
  static DensityMatrix from_pure(const PureState& psi);

  const CMatrix& matrix() const noexcept { return entries_; }
  int dim() const noexcept { return static_cast<int>(entries_.rows()); }

 private:
  CMatrix entries_;
};

}  // namespace qldp
