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
#include <vector>

#include "qldp/kraus.hpp"
#include "qldp/perron.hpp"
#include "qldp/tolerances.hpp"

namespace qldp {

/// Element of the block-diagonal algebra carrying the last m-1 outcomes:
/// one d x d block per (m-1)-tuple, k^(m-1) blocks in big-endian tuple
/// order. For m = 1 there is a single block.
class BlockOperator {
 public:
  BlockOperator(int m, int d, int k, std::vector<CMatrix> blocks);

  static BlockOperator zero(int m, int d, int k);
  static BlockOperator identity(int m, int d, int k);

  int level() const noexcept { return level_; }
  int dim() const noexcept { return dim_; }
  int outcomes() const noexcept { return outcomes_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }

  const CMatrix& block(std::size_t b) const { return blocks_[b]; }
  CMatrix& block(std::size_t b) { return blocks_[b]; }
  const std::vector<CMatrix>& blocks() const noexcept { return blocks_; }

  /// Largest blockwise operator norm.
  double norm() const;

  /// Sum of all blocks.
  CMatrix block_sum() const;

  BlockOperator& operator-=(const BlockOperator& other);
  BlockOperator& operator*=(double s);

 private:
  int level_;
  int dim_;
  int outcomes_;
  std::vector<CMatrix> blocks_;
};

/// Hilbert-Schmidt pairing summed over blocks.
Complex hs_inner(const BlockOperator& a, const BlockOperator& b);

/// Real tilt t indexed by m-tuples, big-endian (index = sum_j i_j k^(m-j)).
class TiltVector {
 public:
  TiltVector(int m, int k, RVector values);

  static TiltVector zero(int m, int k);
  /// s * direction.
  static TiltVector along(int m, int k, const RVector& direction, double s);

  int level() const noexcept { return level_; }
  int outcomes() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  const RVector& values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_(static_cast<Index>(j)); }

 private:
  int level_;
  int outcomes_;
  RVector values_;
};

/// Orthogonal projections onto the supports of the blocks of M^(m),
/// together with orthonormal bases of their ranges.
struct SupportProjection {
  int level = 1;
  std::vector<CMatrix> projections;  // Q_b, d x d
  std::vector<CMatrix> bases;        // d x rank_b, orthonormal columns
  std::vector<int> ranks;

  /// sum_b rank_b^2, the dimension of the invariant subalgebra.
  Index restricted_dimension() const;

  /// Q_b = 1 for every block (no compression).
  static SupportProjection full(int m, int d, int k);
};

/// M^(m): blocks V_{i_1}^dagger..V_{i_{m-1}}^dagger V_{i_{m-1}}..V_{i_1}.
/// The single m = 1 block is the identity.
BlockOperator boundary_operator(const KrausFamily& fam, int m, const Tolerances& tol = {});

/// Projection of each block onto eigenvectors whose eigenvalue exceeds
/// rank_tol times the block's largest eigenvalue. Eigenvalues below
/// rank_tol times the largest eigenvalue over all blocks are also dropped,
/// so blocks that are zero up to rounding get rank 0.
SupportProjection support_projections(const BlockOperator& boundary, double rank_tol = 1e-10);

/// [T_{t,m}(Y)]_{i_1..i_{m-1}} = sum_{i_m} e^{t_{i_1..i_m}} V_{i_1}^dagger [Y]_{i_2..i_m} V_{i_1}.
BlockOperator apply_tilted(const KrausFamily& fam, const TiltVector& t, const BlockOperator& y);

/// The tilted map restricted to the invariant subalgebra
/// B_m = sum_b Q_b M_d Q_b, in coordinates y_b = W_b^dagger Y_b W_b
/// (column-stacked per block, blocks concatenated in tuple order).
///
/// Coordinates are Hilbert-Schmidt isometric, so adjoints and pairings
/// computed here agree with those on the full algebra.
class RestrictedTiltedMap {
 public:
  RestrictedTiltedMap(const KrausFamily& fam, const TiltVector& t, const SupportProjection& q);

  Index dimension() const noexcept { return dimension_; }

  CVector apply(const CVector& y) const;
  CVector apply_adjoint(const CVector& x) const;
  CMatrix dense() const;

  CVector compress(const BlockOperator& y) const;
  BlockOperator embed(const CVector& y) const;

  /// Coordinates of the unit of B_m (the projections Q_b).
  CVector unit() const;

  /// <left, (d T / d t_j)(right)> for every tilt index j.
  std::vector<Complex> derivative_pairings(const CVector& left, const CVector& right) const;

 private:
  struct Term {
    std::size_t tilt;
    std::size_t target;  // block (i_1..i_{m-1})
    std::size_t source;  // block (i_2..i_m)
    double weight;       // e^{t_j}
    CMatrix a;           // W_source^dagger V_{i_1} W_target
  };

  Eigen::Map<const CMatrix> view(const CVector& y, std::size_t b) const;

  int level_;
  int dim_;
  int outcomes_;
  Index dimension_ = 0;
  std::vector<Index> offsets_;
  std::vector<int> ranks_;
  std::vector<CMatrix> bases_;
  std::vector<Term> terms_;
};

/// Perron data of the restricted map: dense eigensolve up to
/// tol.dense_limit (for Auto), matrix-free power iteration from the unit
/// otherwise.
PerronData restricted_perron(const RestrictedTiltedMap& map,
                             PerronMethod method = PerronMethod::Auto,
                             const Tolerances& tol = {});

/// Dense representation of the restricted tilted map.
CMatrix restricted_matrix(const KrausFamily& fam, const TiltVector& t,
                          const SupportProjection& q);

/// Eigenvalues of the unrestricted T_{t,m} on the whole block algebra,
/// decreasing modulus. Diagnostic only.
std::vector<Complex> unrestricted_tilted_spectrum(const KrausFamily& fam, const TiltVector& t,
                                                  const Tolerances& tol = {});

/// d log r / d t_j of the restricted map by first-order perturbation of the
/// Perron pair. Throws DegeneratePerronEigenvalue when the gap is below
/// tol.min_gap.
RVector radius_gradient(const KrausFamily& fam, const TiltVector& t, const SupportProjection& q,
                        const Tolerances& tol = {});

}  // namespace qldp
