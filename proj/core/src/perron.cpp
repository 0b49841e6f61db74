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


#include "qldp/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qldp/error.hpp"

namespace qldp {

namespace {

// Unit norm, largest-modulus component real positive; left scaled to
// <left, right> = 1.
void normalize_pair(PerronData& p) {
  p.right /= p.right.norm();
  Index arg = 0;
  p.right.cwiseAbs().maxCoeff(&arg);
  const Complex phase = p.right(arg) / std::abs(p.right(arg));
  p.right /= phase;
  const Complex overlap = p.left.dot(p.right);
  if (std::abs(overlap) < 1e-300) {
    throw Error(ErrorCode::EigenSolverFailure, "left and right Perron vectors are orthogonal");
  }
  p.left /= std::conj(overlap);
}

Index dominant_index(const CVector& ev) {
  double top = 0.0;
  for (Index i = 0; i < ev.size(); ++i) top = std::max(top, std::abs(ev(i)));
  Index best = 0;
  bool found = false;
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < top * (1.0 - 1e-12)) continue;
    if (!found || ev(i).real() > ev(best).real()) {
      best = i;
      found = true;
    }
  }
  return best;
}

}  // namespace

PerronData perron_data(const CMatrix& matrix, PerronMethod method, const Tolerances& tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "Perron data needs a nonempty square matrix");
  }
  const auto n = static_cast<std::size_t>(matrix.rows());
  if (method == PerronMethod::Power ||
      (method == PerronMethod::Auto && n > tol.dense_limit)) {
    LinearMap op;
    op.dim = matrix.rows();
    op.apply = [&matrix](const CVector& y) -> CVector { return matrix * y; };
    op.apply_adjoint = [&matrix](const CVector& x) -> CVector { return matrix.adjoint() * x; };
    op.start = CVector::Ones(matrix.rows());
    return perron_data(op, tol);
  }

  Eigen::ComplexEigenSolver<CMatrix> right_solver(matrix, true);
  if (right_solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, "dense eigendecomposition failed");
  }
  const CVector& ev = right_solver.eigenvalues();
  const Index top = dominant_index(ev);
  const Complex lambda = ev(top);

  Eigen::ComplexEigenSolver<CMatrix> left_solver(matrix.adjoint(), true);
  if (left_solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, "dense adjoint eigendecomposition failed");
  }
  Index left_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < left_solver.eigenvalues().size(); ++i) {
    const double dist = std::abs(left_solver.eigenvalues()(i) - std::conj(lambda));
    if (dist < best) {
      best = dist;
      left_index = i;
    }
  }

  PerronData p;
  p.method = PerronMethod::Dense;
  p.spectral_radius = std::abs(lambda);
  p.right = right_solver.eigenvectors().col(top);
  p.left = left_solver.eigenvectors().col(left_index);
  double second = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (i != top) second = std::max(second, std::abs(ev(i)));
  }
  p.gap = p.spectral_radius - second;
  normalize_pair(p);

  const double residual = (matrix * p.right - lambda * p.right).norm();
  if (residual > 1e-9 * std::max(p.spectral_radius, 1e-300)) {
    throw Error(ErrorCode::EigenSolverFailure,
                "Perron residual " + std::to_string(residual) + " too large");
  }
  return p;
}

namespace {

struct PowerResult {
  CVector vector;
  Complex value;
  std::size_t iterations = 0;
  double ratio = 0.0;  // estimate of |lambda_2| / r
};

PowerResult power_iterate(const std::function<CVector(const CVector&)>& apply, CVector x,
                          const Tolerances& tol) {
  x /= x.norm();
  PowerResult out;
  double previous_residual = -1.0;
  for (std::size_t it = 1; it <= tol.power_max_iter; ++it) {
    CVector y = apply(x);
    const Complex value = x.dot(y);
    const double residual = (y - value * x).norm();
    const double scale = std::abs(value);
    if (scale < 1e-300) {
      throw Error(ErrorCode::NonConvergence, "power iteration collapsed to zero");
    }
    if (previous_residual > 0.0 && residual > 1e-10 * scale && residual < 1e-3 * scale) {
      out.ratio = residual / previous_residual;
    }
    previous_residual = residual;
    if (residual <= tol.power_tol * scale) {
      out.vector = x;
      out.value = value;
      out.iterations = it;
      return out;
    }
    x = y / y.norm();
  }
  throw Error(ErrorCode::NonConvergence,
              "power iteration did not converge in " + std::to_string(tol.power_max_iter) +
                  " iterations");
}

}  // namespace

PerronData perron_data(const LinearMap& map, const Tolerances& tol) {
  if (map.dim <= 0 || !map.apply || !map.apply_adjoint) {
    throw Error(ErrorCode::InvalidArgument, "linear map is incomplete");
  }
  const CVector start = map.start.size() == map.dim ? map.start : CVector::Ones(map.dim);
  const auto right = power_iterate(map.apply, start, tol);
  const auto left = power_iterate(map.apply_adjoint, start, tol);

  PerronData p;
  p.method = PerronMethod::Power;
  p.spectral_radius = std::abs(right.value);
  p.right = right.vector;
  p.left = left.vector;
  p.iterations = right.iterations + left.iterations;
  p.gap = p.spectral_radius * (1.0 - std::min(1.0, right.ratio));
  normalize_pair(p);
  return p;
}

}  // namespace qldp
