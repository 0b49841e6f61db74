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

#include <optional>
#include <vector>

#include "qldp/error.hpp"
#include "qldp/kraus.hpp"
#include "qldp/tolerances.hpp"

namespace qldp {

enum class Picture { Schrodinger, Heisenberg };

/// T_*(rho) = sum_i V_i rho V_i^dagger.
CMatrix apply_schrodinger(const KrausFamily& fam, const CMatrix& rho);
DensityMatrix apply_schrodinger(const KrausFamily& fam, const DensityMatrix& rho);

/// T(A) = sum_i V_i^dagger A V_i.
CMatrix apply_heisenberg(const KrausFamily& fam, const CMatrix& a);

/// d^2 x d^2 matrix M with vec(map(A)) = M vec(A) under column stacking.
/// The Heisenberg matrix is the adjoint of the Schrodinger one.
CMatrix superoperator_matrix(const KrausFamily& fam, Picture picture);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;  // decreasing modulus
  double spectral_radius = 0.0;
  int peripheral_count = 0;
  std::optional<DensityMatrix> stationary_state;
  int stationary_rank = 0;
  bool is_irreducible = false;
  bool is_primitive = false;
  double spectral_gap = 0.0;  // r - |lambda_2|
};

/// Full eigenanalysis of the transition superoperator.
///
/// Primitivity is decided spectrally: exactly one eigenvalue on the
/// peripheral circle and a full-rank stationary state. Irreducibility
/// requires a nondegenerate eigenvalue 1 with full-rank stationary state.
/// A degenerate eigenvalue 1 leaves stationary_state empty.
SpectrumReport spectrum_report(const KrausFamily& fam, const Tolerances& tol = {});

/// Raised wherever a primitive chain is required; carries the diagnosis.
class NotPrimitiveError : public Error {
 public:
  explicit NotPrimitiveError(SpectrumReport report);
  const SpectrumReport& report() const noexcept { return report_; }

 private:
  SpectrumReport report_;
};

/// Returns the report, or throws NotPrimitiveError.
SpectrumReport require_primitive(const KrausFamily& fam, const Tolerances& tol = {});

/// Stationary probabilities p(i_1..i_m) = Tr(V_{i_m}..V_{i_1} rho_ss V_{i_1}^dagger..),
/// indexed big-endian (i_1 most significant).
RVector stationary_string_probabilities(const KrausFamily& fam, int m,
                                        const Tolerances& tol = {});

/// Probabilities of full outcome strings of length n from initial state psi,
/// p(i_1..i_n) = ||V_{i_n}..V_{i_1} psi||^2.
RVector string_probabilities(const KrausFamily& fam, const PureState& psi, int n,
                             const Tolerances& tol = {});

}  // namespace qldp
