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


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qldp/error.hpp"
#include "qldp/models.hpp"
#include "qldp/perron.hpp"
#include "qldp/tilted.hpp"
#include "qldp/tuples.hpp"
#include "test_models.hpp"

namespace qldp {
namespace {

TEST(PerronData, OneByOne) {
  CMatrix m(1, 1);
  m(0, 0) = 2.5;
  const auto p = perron_data(m);
  EXPECT_NEAR(p.spectral_radius, 2.5, 1e-15);
  EXPECT_NEAR(std::abs(p.right(0) - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(PerronData, TiltedCoinRadius) {
  const auto fam = example2(std::numbers::pi / 2);
  const auto q = SupportProjection::full(1, 2, 2);
  for (double s = -2.0; s <= 2.0; s += 0.5) {
    RVector tv(2);
    tv << s, 0.0;
    const auto p = perron_data(restricted_matrix(fam, TiltVector(1, 2, tv), q));
    EXPECT_NEAR(p.spectral_radius, 0.5 * (std::exp(s) + 1.0), 1e-12);
  }
}

TEST(PerronData, NormalizationAndResiduals) {
  Rng rng(9);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fam = testing::random_primitive(2, 3, seed);
    const auto q = support_projections(boundary_operator(fam, 2));
    const TiltVector t(2, 3, testing::random_vector(9, -1.0, 1.0, rng));
    const CMatrix m = restricted_matrix(fam, t, q);
    const auto p = perron_data(m);
    const double r = p.spectral_radius;
    EXPECT_GT(r, 0.0);
    EXPECT_NEAR(p.right.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(p.left.dot(p.right) - Complex(1.0, 0.0)), 0.0, 1e-10);
    EXPECT_LE((m * p.right - r * p.right).norm(), 1e-9 * r);
    EXPECT_LE((m.adjoint() * p.left - r * p.left).norm(), 1e-9 * r * p.left.norm());
    Index arg = 0;
    p.right.cwiseAbs().maxCoeff(&arg);
    EXPECT_NEAR(p.right(arg).imag(), 0.0, 1e-15);
    EXPECT_GT(p.right(arg).real(), 0.0);
    EXPECT_GT(p.gap, 0.0);
  }
}

TEST(PerronData, DenseAndPowerAgree) {
  Rng rng(13);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    const int m = 1 + static_cast<int>(seed % 3);
    const auto fam = testing::random_primitive(2, k, seed + 50);
    const auto q = support_projections(boundary_operator(fam, m));
    const Index size = static_cast<Index>(checked_power(k, m, 1u << 20));
    const TiltVector t(m, k, testing::random_vector(size, -1.0, 1.0, rng));
    const RestrictedTiltedMap map(fam, t, q);
    const auto dense = restricted_perron(map, PerronMethod::Dense);
    const auto power = restricted_perron(map, PerronMethod::Power);
    EXPECT_EQ(dense.method, PerronMethod::Dense);
    EXPECT_EQ(power.method, PerronMethod::Power);
    EXPECT_NEAR(dense.spectral_radius, power.spectral_radius, 1e-9 * dense.spectral_radius);
    EXPECT_LE((dense.right - power.right).norm(), 1e-6);
  }
}

TEST(PerronData, PowerNonConvergence) {
  // rotation: two peripheral eigenvalues, the power method cannot settle
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  LinearMap map;
  map.dim = 2;
  map.apply = [&](const CVector& v) { return CVector(m * v); };
  map.apply_adjoint = [&](const CVector& v) { return CVector(m.adjoint() * v); };
  map.start = CVector::Ones(2);
  map.start(0) = 2.0;
  Tolerances tol;
  tol.power_max_iter = 200;
  try {
    perron_data(map, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvergence);
  }
}

}  // namespace
}  // namespace qldp
