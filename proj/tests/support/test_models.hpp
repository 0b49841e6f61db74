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

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qldp/channel.hpp"
#include "qldp/kraus.hpp"
#include "qldp/rng.hpp"

namespace qldp::testing {

/// Seeded random Kraus family, redrawn until primitive.
inline KrausFamily random_primitive(int d, int k, std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    KrausFamily fam = random_kraus(d, k, rng);
    if (spectrum_report(fam).is_primitive) return fam;
  }
}

inline RVector random_vector(Index size, double lo, double hi, Rng& rng) {
  RVector v(size);
  for (Index i = 0; i < size; ++i) v(i) = lo + (hi - lo) * rng.uniform();
  return v;
}

inline CMatrix random_matrix(int d, Rng& rng) {
  CMatrix a(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
  }
  return a;
}

inline double coin_rate(double x0) {
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  return std::numbers::ln2 + xlogx(x0) + xlogx(1.0 - x0);
}

}  // namespace qldp::testing
