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


#include "qldp/rng.hpp"

#include <cmath>
#include <numbers>

namespace qldp {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) noexcept {
  return splitmix64(splitmix64(base) ^ splitmix64(counter + 0x632BE59BD9B4E019ULL));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  }
  return g;
}

}  // namespace

CMatrix random_unitary(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

KrausFamily random_kraus(int d, int k, Rng& rng) {
  CVector chi = CVector::Zero(k);
  chi(0) = 1.0;
  return kraus_from_unitary(random_unitary(d * k, rng), chi, d, k);
}

PureState random_pure_state(int d, Rng& rng) {
  CVector v = ginibre(d, 1, rng).col(0);
  return PureState(v / v.norm());
}

DensityMatrix random_density_matrix(int d, Rng& rng) {
  const CMatrix g = ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

}  // namespace qldp
