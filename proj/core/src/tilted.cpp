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


#include "qldp/tilted.hpp"

#include <algorithm>
#include <cmath>

#include "qldp/error.hpp"
#include "qldp/tuples.hpp"

namespace qldp {

namespace {

std::size_t block_count_for(int m, int k) {
  std::size_t n = 1;
  for (int i = 1; i < m; ++i) n *= static_cast<std::size_t>(k);
  return n;
}

}  // namespace

BlockOperator::BlockOperator(int m, int d, int k, std::vector<CMatrix> blocks)
    : level_(m), dim_(d), outcomes_(k), blocks_(std::move(blocks)) {
  if (m < 1 || d < 1 || k < 2) throw Error(ErrorCode::BadDimensions, "need m >= 1, d >= 1, k >= 2");
  if (blocks_.size() != block_count_for(m, k)) {
    throw Error(ErrorCode::DimensionMismatch, "block operator needs k^(m-1) blocks");
  }
  for (const auto& b : blocks_) {
    if (b.rows() != d || b.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "blocks must be d x d");
    }
  }
}

BlockOperator BlockOperator::zero(int m, int d, int k) {
  return BlockOperator(m, d, k, std::vector<CMatrix>(block_count_for(m, k), CMatrix::Zero(d, d)));
}

BlockOperator BlockOperator::identity(int m, int d, int k) {
  return BlockOperator(m, d, k,
                       std::vector<CMatrix>(block_count_for(m, k), CMatrix::Identity(d, d)));
}

double BlockOperator::norm() const {
  double out = 0.0;
  for (const auto& b : blocks_) out = std::max(out, operator_norm(b));
  return out;
}

CMatrix BlockOperator::block_sum() const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& b : blocks_) out += b;
  return out;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& other) {
  if (other.blocks_.size() != blocks_.size() || other.dim_ != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "block operator shapes differ");
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= other.blocks_[b];
  return *this;
}

BlockOperator& BlockOperator::operator*=(double s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

Complex hs_inner(const BlockOperator& a, const BlockOperator& b) {
  if (a.block_count() != b.block_count() || a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "block operator shapes differ");
  }
  Complex out = 0.0;
  for (std::size_t i = 0; i < a.block_count(); ++i) out += hs_inner(a.block(i), b.block(i));
  return out;
}

TiltVector::TiltVector(int m, int k, RVector values)
    : level_(m), outcomes_(k), values_(std::move(values)) {
  if (m < 1 || k < 2) throw Error(ErrorCode::BadDimensions, "need m >= 1 and k >= 2");
  if (static_cast<std::size_t>(values_.size()) != block_count_for(m + 1, k)) {
    throw Error(ErrorCode::DimensionMismatch,
                "tilt vector needs k^m = " + std::to_string(block_count_for(m + 1, k)) +
                    " entries, got " + std::to_string(values_.size()));
  }
  if (!values_.allFinite()) throw Error(ErrorCode::InvalidArgument, "tilt entries must be finite");
}

TiltVector TiltVector::zero(int m, int k) {
  return TiltVector(m, k, RVector::Zero(static_cast<Index>(block_count_for(m + 1, k))));
}

TiltVector TiltVector::along(int m, int k, const RVector& direction, double s) {
  return TiltVector(m, k, s * direction);
}

Index SupportProjection::restricted_dimension() const {
  Index n = 0;
  for (int r : ranks) n += static_cast<Index>(r) * r;
  return n;
}

SupportProjection SupportProjection::full(int m, int d, int k) {
  SupportProjection q;
  q.level = m;
  const auto n = block_count_for(m, k);
  q.projections.assign(n, CMatrix::Identity(d, d));
  q.bases.assign(n, CMatrix::Identity(d, d));
  q.ranks.assign(n, d);
  return q;
}

BlockOperator boundary_operator(const KrausFamily& fam, int m, const Tolerances& tol) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "level m must be >= 1");
  const int d = fam.dim();
  const int k = fam.outcomes();
  const std::size_t per_block = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  const std::size_t count = checked_power(k, m - 1, tol.size_cap / per_block);

  std::vector<CMatrix> blocks;
  blocks.reserve(count);
  for (std::size_t b = 0; b < count; ++b) {
    CMatrix product = CMatrix::Identity(d, d);
    for (int i : tuple_digits(b, k, m - 1)) product = fam[i] * product;
    blocks.push_back(product.adjoint() * product);
  }
  return BlockOperator(m, d, k, std::move(blocks));
}

SupportProjection support_projections(const BlockOperator& boundary, double rank_tol) {
  const int d = boundary.dim();
  std::vector<Eigen::SelfAdjointEigenSolver<CMatrix>> solvers;
  solvers.reserve(boundary.block_count());
  double global_top = 0.0;
  for (const auto& block : boundary.blocks()) {
    solvers.emplace_back(hermitian_part(block));
    global_top = std::max(global_top, solvers.back().eigenvalues().maxCoeff());
  }

  SupportProjection q;
  q.level = boundary.level();
  for (const auto& es : solvers) {
    const RVector& ev = es.eigenvalues();
    const double threshold = rank_tol * std::max(ev.maxCoeff(), 0.0);
    const double floor = rank_tol * global_top;
    std::vector<Index> keep;
    for (Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > threshold && ev(i) > floor) keep.push_back(i);
    }
    CMatrix basis(d, static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
      basis.col(static_cast<Index>(c)) = es.eigenvectors().col(keep[c]);
    }
    q.projections.push_back(basis * basis.adjoint());
    q.ranks.push_back(static_cast<int>(keep.size()));
    q.bases.push_back(std::move(basis));
  }
  return q;
}

BlockOperator apply_tilted(const KrausFamily& fam, const TiltVector& t, const BlockOperator& y) {
  const int m = t.level();
  const int k = fam.outcomes();
  if (y.level() != m || y.dim() != fam.dim() || y.outcomes() != k || t.outcomes() != k) {
    throw Error(ErrorCode::DimensionMismatch, "tilt, operand and family disagree on m, d or k");
  }
  const std::size_t stride = block_count_for(m, k);  // k^(m-1)
  BlockOperator out = BlockOperator::zero(m, fam.dim(), k);
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto& v = fam[static_cast<int>(j / stride)];
    out.block(j / static_cast<std::size_t>(k)).noalias() +=
        std::exp(t[j]) * (v.adjoint() * y.block(j % stride) * v);
  }
  return out;
}

RestrictedTiltedMap::RestrictedTiltedMap(const KrausFamily& fam, const TiltVector& t,
                                         const SupportProjection& q)
    : level_(t.level()), dim_(fam.dim()), outcomes_(fam.outcomes()), ranks_(q.ranks),
      bases_(q.bases) {
  const int k = outcomes_;
  const std::size_t blocks = block_count_for(level_, k);
  if (t.outcomes() != k || q.level != level_ || q.ranks.size() != blocks ||
      q.bases.size() != blocks) {
    throw Error(ErrorCode::DimensionMismatch, "tilt, projections and family disagree");
  }
  offsets_.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    if (bases_[b].rows() != dim_ || bases_[b].cols() != ranks_[b]) {
      throw Error(ErrorCode::DimensionMismatch, "projection basis has wrong shape");
    }
    offsets_.push_back(dimension_);
    dimension_ += static_cast<Index>(ranks_[b]) * ranks_[b];
  }

  for (std::size_t j = 0; j < t.size(); ++j) {
    Term term;
    term.tilt = j;
    term.target = j / static_cast<std::size_t>(k);
    term.source = j % blocks;
    if (ranks_[term.target] == 0 || ranks_[term.source] == 0) continue;
    term.weight = std::exp(t[j]);
    term.a = bases_[term.source].adjoint() * fam[static_cast<int>(j / blocks)] * bases_[term.target];
    terms_.push_back(std::move(term));
  }
}

Eigen::Map<const CMatrix> RestrictedTiltedMap::view(const CVector& y, std::size_t b) const {
  return Eigen::Map<const CMatrix>(y.data() + offsets_[b], ranks_[b], ranks_[b]);
}

CVector RestrictedTiltedMap::apply(const CVector& y) const {
  if (y.size() != dimension_) throw Error(ErrorCode::DimensionMismatch, "restricted vector length");
  CVector out = CVector::Zero(dimension_);
  for (const auto& term : terms_) {
    Eigen::Map<CMatrix> target(out.data() + offsets_[term.target], ranks_[term.target],
                               ranks_[term.target]);
    target.noalias() += term.weight * (term.a.adjoint() * view(y, term.source) * term.a);
  }
  return out;
}

CVector RestrictedTiltedMap::apply_adjoint(const CVector& x) const {
  if (x.size() != dimension_) throw Error(ErrorCode::DimensionMismatch, "restricted vector length");
  CVector out = CVector::Zero(dimension_);
  for (const auto& term : terms_) {
    Eigen::Map<CMatrix> source(out.data() + offsets_[term.source], ranks_[term.source],
                               ranks_[term.source]);
    source.noalias() += term.weight * (term.a * view(x, term.target) * term.a.adjoint());
  }
  return out;
}

CMatrix RestrictedTiltedMap::dense() const {
  CMatrix out = CMatrix::Zero(dimension_, dimension_);
  for (const auto& term : terms_) {
    // vec(a^dagger y a) = (a^T kron a^dagger) vec(y)
    const CMatrix left = term.a.transpose();
    const CMatrix right = term.a.adjoint();
    const Index rt = ranks_[term.target];
    const Index rs = ranks_[term.source];
    for (Index p = 0; p < rt; ++p) {
      for (Index c = 0; c < rs; ++c) {
        out.block(offsets_[term.target] + p * rt, offsets_[term.source] + c * rs, rt, rs) +=
            term.weight * left(p, c) * right;
      }
    }
  }
  return out;
}

CVector RestrictedTiltedMap::compress(const BlockOperator& y) const {
  if (y.block_count() != ranks_.size() || y.dim() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "block operator does not match restriction");
  }
  CVector out(dimension_);
  for (std::size_t b = 0; b < ranks_.size(); ++b) {
    const CMatrix c = bases_[b].adjoint() * y.block(b) * bases_[b];
    out.segment(offsets_[b], c.size()) = Eigen::Map<const CVector>(c.data(), c.size());
  }
  return out;
}

BlockOperator RestrictedTiltedMap::embed(const CVector& y) const {
  if (y.size() != dimension_) throw Error(ErrorCode::DimensionMismatch, "restricted vector length");
  BlockOperator out = BlockOperator::zero(level_, dim_, outcomes_);
  for (std::size_t b = 0; b < ranks_.size(); ++b) {
    out.block(b) = bases_[b] * view(y, b) * bases_[b].adjoint();
  }
  return out;
}

CVector RestrictedTiltedMap::unit() const {
  CVector out = CVector::Zero(dimension_);
  for (std::size_t b = 0; b < ranks_.size(); ++b) {
    for (int i = 0; i < ranks_[b]; ++i) out(offsets_[b] + i * ranks_[b] + i) = 1.0;
  }
  return out;
}

std::vector<Complex> RestrictedTiltedMap::derivative_pairings(const CVector& left,
                                                              const CVector& right) const {
  if (left.size() != dimension_ || right.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "restricted vector length");
  }
  std::vector<Complex> out(block_count_for(level_ + 1, outcomes_), Complex(0.0));
  for (const auto& term : terms_) {
    const CMatrix image = term.a.adjoint() * view(right, term.source) * term.a;
    out[term.tilt] = term.weight * hs_inner(CMatrix(view(left, term.target)), image);
  }
  return out;
}

PerronData restricted_perron(const RestrictedTiltedMap& map, PerronMethod method,
                             const Tolerances& tol) {
  if (map.dimension() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "restricted algebra is empty");
  }
  const bool dense = method == PerronMethod::Dense ||
                     (method == PerronMethod::Auto &&
                      static_cast<std::size_t>(map.dimension()) <= tol.dense_limit);
  if (dense) return perron_data(map.dense(), PerronMethod::Dense, tol);
  LinearMap op;
  op.dim = map.dimension();
  op.apply = [&map](const CVector& y) { return map.apply(y); };
  op.apply_adjoint = [&map](const CVector& x) { return map.apply_adjoint(x); };
  op.start = map.unit();
  return perron_data(op, tol);
}

CMatrix restricted_matrix(const KrausFamily& fam, const TiltVector& t,
                          const SupportProjection& q) {
  return RestrictedTiltedMap(fam, t, q).dense();
}

std::vector<Complex> unrestricted_tilted_spectrum(const KrausFamily& fam, const TiltVector& t,
                                                  const Tolerances& tol) {
  const std::size_t blocks = block_count_for(t.level(), fam.outcomes());
  const std::size_t d2 = static_cast<std::size_t>(fam.dim()) * static_cast<std::size_t>(fam.dim());
  if (blocks * d2 > tol.dense_limit) {
    throw Error(ErrorCode::SizeCapExceeded, "unrestricted spectrum is limited to dense sizes");
  }
  const RestrictedTiltedMap map(fam, t, SupportProjection::full(t.level(), fam.dim(), fam.outcomes()));
  Eigen::ComplexEigenSolver<CMatrix> solver(map.dense(), false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, "unrestricted tilted eigendecomposition failed");
  }
  std::vector<Complex> ev(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    if (std::abs(std::abs(a) - std::abs(b)) > 1e-12) return std::abs(a) > std::abs(b);
    return a.real() > b.real();
  });
  return ev;
}

RVector radius_gradient(const KrausFamily& fam, const TiltVector& t, const SupportProjection& q,
                        const Tolerances& tol) {
  const RestrictedTiltedMap map(fam, t, q);
  const PerronData perron = restricted_perron(map, PerronMethod::Auto, tol);
  if (perron.gap <= tol.min_gap) {
    throw Error(ErrorCode::DegeneratePerronEigenvalue,
                "Perron gap " + std::to_string(perron.gap) + " too small to differentiate");
  }
  const auto pairings = map.derivative_pairings(perron.left, perron.right);
  const Complex scale = perron.spectral_radius * perron.left.dot(perron.right);
  RVector grad(static_cast<Index>(pairings.size()));
  for (std::size_t j = 0; j < pairings.size(); ++j) {
    grad(static_cast<Index>(j)) = (pairings[j] / scale).real();
  }
  return grad;
}

}  // namespace qldp
