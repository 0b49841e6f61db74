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


#include "qldp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qldp/tuples.hpp"

namespace qldp {

namespace {

void check_dims(const KrausFamily& fam, const CMatrix& a) {
  if (a.rows() != fam.dim() || a.cols() != fam.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operand is not d x d");
  }
}

bool modulus_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (std::abs(ma - mb) > 1e-12) return ma > mb;
  if (std::abs(a.real() - b.real()) > 1e-12) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

CMatrix apply_schrodinger(const KrausFamily& fam, const CMatrix& rho) {
  check_dims(fam, rho);
  CMatrix out = CMatrix::Zero(fam.dim(), fam.dim());
  for (const auto& v : fam.operators()) out.noalias() += v * rho * v.adjoint();
  return out;
}

DensityMatrix apply_schrodinger(const KrausFamily& fam, const DensityMatrix& rho) {
  return DensityMatrix(hermitian_part(apply_schrodinger(fam, rho.matrix())));
}

CMatrix apply_heisenberg(const KrausFamily& fam, const CMatrix& a) {
  check_dims(fam, a);
  CMatrix out = CMatrix::Zero(fam.dim(), fam.dim());
  for (const auto& v : fam.operators()) out.noalias() += v.adjoint() * a * v;
  return out;
}

CMatrix superoperator_matrix(const KrausFamily& fam, Picture picture) {
  const Index d = fam.dim();
  CMatrix out = CMatrix::Zero(d * d, d * d);
  // vec(A X B) = (B^T kron A) vec(X)
  for (const auto& v : fam.operators()) {
    const CMatrix left = picture == Picture::Schrodinger ? v : CMatrix(v.adjoint());
    const CMatrix right_t = picture == Picture::Schrodinger ? CMatrix(v.conjugate())
                                                            : CMatrix(v.transpose());
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < d; ++b) {
        out.block(a * d, b * d, d, d) += right_t(a, b) * left;
      }
    }
  }
  return out;
}

SpectrumReport spectrum_report(const KrausFamily& fam, const Tolerances& tol) {
  const int d = fam.dim();
  const CMatrix sup = superoperator_matrix(fam, Picture::Schrodinger);
  Eigen::ComplexEigenSolver<CMatrix> solver(sup, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, "superoperator eigendecomposition failed");
  }

  SpectrumReport report;
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), modulus_order);
  report.spectral_radius = std::abs(report.eigenvalues.front());
  report.spectral_gap =
      report.eigenvalues.size() > 1
          ? report.spectral_radius - std::abs(report.eigenvalues[1])
          : report.spectral_radius;
  report.peripheral_count = static_cast<int>(std::count_if(
      report.eigenvalues.begin(), report.eigenvalues.end(), [&](const Complex& z) {
        return std::abs(z) >= report.spectral_radius - tol.peripheral_tol;
      }));
  const auto unit_multiplicity = std::count_if(
      report.eigenvalues.begin(), report.eigenvalues.end(),
      [&](const Complex& z) { return std::abs(z - 1.0) <= tol.peripheral_tol; });

  if (unit_multiplicity == 1) {
    const CMatrix shifted = sup - CMatrix::Identity(d * d, d * d);
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    const CVector null = svd.matrixV().col(d * d - 1);
    CMatrix rho = unvectorize(null, d, d);
    rho /= rho.trace();
    rho = hermitian_part(rho);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    report.stationary_rank = static_cast<int>(
        (es.eigenvalues().array() > tol.stationary_rank_tol * top).count());
    report.stationary_state = DensityMatrix(std::move(rho));
  }

  report.is_irreducible = unit_multiplicity == 1 && report.stationary_rank == d;
  report.is_primitive = report.peripheral_count == 1 && report.stationary_rank == d;
  return report;
}

namespace {

std::string describe(const SpectrumReport& r) {
  std::ostringstream msg;
  msg << "transition operator is not primitive (peripheral eigenvalues: "
      << r.peripheral_count << ", stationary rank: " << r.stationary_rank << ")";
  return msg.str();
}

}  // namespace

NotPrimitiveError::NotPrimitiveError(SpectrumReport report)
    : Error(ErrorCode::NotPrimitive, describe(report)), report_(std::move(report)) {}

SpectrumReport require_primitive(const KrausFamily& fam, const Tolerances& tol) {
  auto report = spectrum_report(fam, tol);
  if (!report.is_primitive) throw NotPrimitiveError(std::move(report));
  return report;
}

namespace {

// Depth-first traversal of outcome strings; visit(index, unnormalized state)
// is called on every string of the requested length.
void walk_strings(const KrausFamily& fam, const CMatrix& rho, int depth, int length,
                  std::size_t prefix, const std::function<void(std::size_t, const CMatrix&)>& visit) {
  if (depth == length) {
    visit(prefix, rho);
    return;
  }
  const int k = fam.outcomes();
  for (int i = 0; i < k; ++i) {
    const CMatrix next = fam[i] * rho * fam[i].adjoint();
    walk_strings(fam, next, depth + 1, length, prefix * static_cast<std::size_t>(k) + static_cast<std::size_t>(i),
                 visit);
  }
}

}  // namespace

RVector stationary_string_probabilities(const KrausFamily& fam, int m, const Tolerances& tol) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
  const std::size_t count = checked_power(fam.outcomes(), m, tol.size_cap);
  const auto report = require_primitive(fam, tol);
  RVector probs(static_cast<Index>(count));
  walk_strings(fam, report.stationary_state->matrix(), 0, m, 0,
               [&](std::size_t idx, const CMatrix& r) {
                 probs(static_cast<Index>(idx)) = r.trace().real();
               });
  return probs;
}

RVector string_probabilities(const KrausFamily& fam, const PureState& psi, int n,
                             const Tolerances& tol) {
  if (psi.dim() != fam.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "string length must be >= 1");
  const std::size_t count = checked_power(fam.outcomes(), n, tol.size_cap);
  RVector probs(static_cast<Index>(count));
  const CMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
  walk_strings(fam, rho, 0, n, 0, [&](std::size_t idx, const CMatrix& r) {
    probs(static_cast<Index>(idx)) = r.trace().real();
  });
  return probs;
}

}  // namespace qldp
