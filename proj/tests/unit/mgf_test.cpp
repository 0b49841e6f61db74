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
#include "qldp/ldp.hpp"
#include "qldp/mgf.hpp"
#include "qldp/models.hpp"
#include "qldp/tuples.hpp"
#include "test_models.hpp"

namespace qldp {
namespace {

TiltVector random_tilt(int m, int k, Rng& rng) {
  const Index size = static_cast<Index>(checked_power(k, m, 1u << 20));
  return TiltVector(m, k, testing::random_vector(size, -1.0, 1.0, rng));
}

TEST(FiniteMgf, ZeroTiltIsOne) {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto fam = random_kraus(2, 2 + trial % 2, rng);
    const auto psi = random_pure_state(2, rng);
    for (int m = 1; m <= 3; ++m) {
      const auto t = TiltVector::zero(m, fam.outcomes());
      EXPECT_NEAR(finite_mgf_lemma(fam, psi, t, 7).value, 1.0, 1e-10);
      EXPECT_NEAR(finite_mgf_bruteforce(fam, psi, t, 7).value, 1.0, 1e-12);
    }
  }
}

TEST(FiniteMgf, FairCoin) {
  // From |+> every outcome is an independent fair coin.
  const auto fam = example2(std::numbers::pi / 2);
  CVector plus = CVector::Ones(2) / std::sqrt(2.0);
  const PureState psi(plus);
  for (double s : {-1.0, 0.3, 1.5}) {
    RVector tv(2);
    tv << s, 0.0;
    for (int n : {1, 5, 12}) {
      const double expected = std::pow(0.5 * (std::exp(s) + 1.0), n);
      EXPECT_NEAR(finite_mgf_lemma(fam, psi, TiltVector(1, 2, tv), n).value / expected, 1.0, 1e-12);
    }
  }
}

TEST(FiniteMgf, FairCoinFromBasisState) {
  // V_1 |0> = 0, so the first outcome is 0 with certainty; the rest are fair coins.
  const auto fam = example2(std::numbers::pi / 2);
  const auto psi = PureState::basis(2, 0);
  for (double s : {-1.0, 0.3, 1.5}) {
    RVector tv(2);
    tv << s, 0.0;
    for (int n : {1, 5, 12}) {
      const double expected = std::exp(s) * std::pow(0.5 * (std::exp(s) + 1.0), n - 1);
      EXPECT_NEAR(finite_mgf_lemma(fam, psi, TiltVector(1, 2, tv), n).value / expected, 1.0, 1e-12);
      EXPECT_NEAR(finite_mgf_bruteforce(fam, psi, TiltVector(1, 2, tv), n).value / expected, 1.0, 1e-12);
    }
  }
}

TEST(FiniteMgf, FrozenOracleValue) {
  // independent numpy evaluation, tests/oracles/compute_oracles.py
  RVector tv(4);
  tv << 0.1, -0.1, 0.1, -0.1;
  const TiltVector t(2, 2, tv);
  const auto psi = PureState::basis(2, 0);
  const auto fam = example1(0.5);
  const double oracle = 0.9456467463833561;
  EXPECT_NEAR(finite_mgf_lemma(fam, psi, t, 5).value / oracle, 1.0, 1e-12);
  EXPECT_NEAR(finite_mgf_bruteforce(fam, psi, t, 5).value / oracle, 1.0, 1e-12);
}

TEST(FiniteMgf, SingleWindowIsTiltedExpectation) {
  Rng rng(3);
  const auto fam = random_kraus(2, 3, rng);
  const auto psi = random_pure_state(2, rng);
  const auto t = random_tilt(2, 3, rng);
  const RVector p = string_probabilities(fam, psi, 2);
  const double direct = (p.array() * t.values().array().exp()).sum();
  EXPECT_NEAR(finite_mgf_bruteforce(fam, psi, t, 2).value / direct, 1.0, 1e-12);
  EXPECT_NEAR(finite_mgf_lemma(fam, psi, t, 2).value / direct, 1.0, 1e-12);
}

TEST(FiniteMgf, TransferRouteMatchesBruteForce) {
  Rng rng(5);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    const auto fam = testing::random_primitive(2, k, seed);
    const auto psi = random_pure_state(2, rng);
    for (int m = 1; m <= 3; ++m) {
      const auto t = random_tilt(m, k, rng);
      for (int n = m; n <= 8; ++n) {
        const double lemma = finite_mgf_lemma(fam, psi, t, n).value;
        const double brute = finite_mgf_bruteforce(fam, psi, t, n).value;
        EXPECT_LE(std::abs(lemma - brute) / brute, 1e-10) << "seed " << seed << " m " << m << " n " << n;
      }
    }
  }
}

TEST(FiniteMgf, LargeNStaysFinite) {
  const auto fam = example1(0.5);
  RVector tv(2);
  tv << 5.0, 4.0;
  const auto r = finite_mgf_lemma(fam, PureState::basis(2, 0), TiltVector(1, 2, tv), 2000);
  EXPECT_TRUE(std::isfinite(r.log_value));
  EXPECT_GT(r.log_value, 2000 * 4.0);
}

TEST(FiniteMgf, Errors) {
  const auto fam = example1(0.5);
  const auto psi = PureState::basis(2, 0);
  EXPECT_THROW(finite_mgf_lemma(fam, psi, TiltVector::zero(3, 2), 2), Error);
  EXPECT_THROW(finite_mgf_bruteforce(fam, psi, TiltVector::zero(1, 2), 21), Error);
}

TEST(FiniteMgf, SlopeConvergesToScgfForTwoInitialStates) {
  const auto fam = testing::random_primitive(2, 2, 77);
  Rng rng(77);
  const auto t = random_tilt(2, 2, rng);
  const double f = scgf(fam, 2, t);
  for (const auto& psi : {PureState::basis(2, 0), PureState::basis(2, 1)}) {
    const double e200 = std::abs(finite_mgf_lemma(fam, psi, t, 200).log_value / 200 - f);
    const double e400 = std::abs(finite_mgf_lemma(fam, psi, t, 400).log_value / 400 - f);
    EXPECT_LE(e400, 0.6 * e200 + 1e-12);
    EXPECT_LE(e400 * 400, 5.0);
  }
}

}  // namespace
}  // namespace qldp
