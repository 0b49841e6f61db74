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

#include <cstdint>
#include <random>

#include "qldp/kraus.hpp"

namespace qldp {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the counter-th work item derived from a base seed. Work items
/// seeded this way are reproducible regardless of execution order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) noexcept;

/// mt19937_64 with distribution code written out here, so streams are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random unitary via QR of a complex Ginibre matrix.
CMatrix random_unitary(int n, Rng& rng);

/// Kraus family V_i = <i|U|0> from a Haar-random U on C^d (x) C^k.
KrausFamily random_kraus(int d, int k, Rng& rng);

PureState random_pure_state(int d, Rng& rng);

/// Full-rank random state from a Ginibre matrix G: G G^dagger / Tr.
DensityMatrix random_density_matrix(int d, Rng& rng);

}  // namespace qldp
