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


#include "qldp/kraus.hpp"

#include <cmath>
#include <sstream>

#include "qldp/error.hpp"

namespace qldp {

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

CVector vectorize(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvectorize(const CVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix shape");
  }
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

KrausFamily::KrausFamily(std::vector<CMatrix> kraus) : dim_(0), kraus_(std::move(kraus)) {
  if (kraus_.size() < 2) {
    throw Error(ErrorCode::BadDimensions, "need at least 2 Kraus operators");
  }
  dim_ = static_cast<int>(kraus_.front().rows());
  if (dim_ < 1) throw Error(ErrorCode::BadDimensions, "system dimension must be positive");
  for (const auto& v : kraus_) {
    if (v.rows() != dim_ || v.cols() != dim_) {
      throw Error(ErrorCode::BadDimensions, "Kraus operators must all be d x d");
    }
  }
}

KrausValidation validate_kraus(const KrausFamily& fam, double norm_tol) {
  const int d = fam.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& v : fam.operators()) sum.noalias() += v.adjoint() * v;
  sum -= CMatrix::Identity(d, d);
  KrausValidation out;
  out.residual = operator_norm(sum);
  out.passed = out.residual <= norm_tol;
  return out;
}

void require_normalized(const KrausFamily& fam, double norm_tol) {
  const auto report = validate_kraus(fam, norm_tol);
  if (!report.passed) {
    std::ostringstream msg;
    msg << "normalization residual ||sum V^dagger V - 1|| = " << report.residual << " exceeds " << norm_tol;
    throw Error(ErrorCode::NormalizationViolation, msg.str());
  }
}

KrausFamily kraus_from_unitary(const CMatrix& unitary, const CVector& chi, int d, int k,
                               double norm_tol) {
  if (d < 1 || k < 2) throw Error(ErrorCode::BadDimensions, "need d >= 1 and k >= 2");
  const Index n = static_cast<Index>(d) * k;
  if (unitary.rows() != n || unitary.cols() != n) {
    throw Error(ErrorCode::BadDimensions, "unitary is not (d k) x (d k)");
  }
  if (chi.size() != k) throw Error(ErrorCode::BadDimensions, "chi must have length k");
  if (std::abs(chi.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NormalizationViolation, "chi is not a unit vector");
  }
  const double unitarity = operator_norm(unitary.adjoint() * unitary - CMatrix::Identity(n, n));
  if (unitarity > 1e-10) {
    std::ostringstream msg;
    msg << "||U^dagger U - 1|| = " << unitarity;
    throw Error(ErrorCode::NotUnitary, msg.str());
  }

  std::vector<CMatrix> kraus(static_cast<std::size_t>(k), CMatrix::Zero(d, d));
  for (int i = 0; i < k; ++i) {
    auto& v = kraus[static_cast<std::size_t>(i)];
    for (int out = 0; out < d; ++out) {
      for (int in = 0; in < d; ++in) {
        Complex acc = 0.0;
        for (int a = 0; a < k; ++a) acc += unitary(out * k + i, in * k + a) * chi(a);
        v(out, in) = acc;
      }
    }
  }
  KrausFamily fam(std::move(kraus));
  require_normalized(fam, norm_tol);
  return fam;
}

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw Error(ErrorCode::BadDimensions, "empty state");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NormalizationViolation, "state vector is not normalized");
  }
}

PureState PureState::basis(int d, int i) {
  if (i < 0 || i >= d) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  CVector v = CVector::Zero(d);
  v(i) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw Error(ErrorCode::BadDimensions, "density matrix must be square");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorCode::InvalidArgument, "density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

}  // namespace qldp
