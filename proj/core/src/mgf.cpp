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


#include "qldp/mgf.hpp"

#include <algorithm>
#include <cmath>

#include "qldp/error.hpp"
#include "qldp/tuples.hpp"

namespace qldp {

namespace {

MgfResult make_result(int n, const TiltVector& t, double log_value) {
  MgfResult r;
  r.n = n;
  r.m = t.level();
  r.t = t.values();
  r.log_value = log_value;
  r.value = std::exp(log_value);
  return r;
}

void check_inputs(const KrausFamily& fam, const PureState& psi, const TiltVector& t, int n) {
  if (psi.dim() != fam.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  if (t.outcomes() != fam.outcomes()) throw Error(ErrorCode::DimensionMismatch, "tilt outcomes");
  if (n < t.level()) {
    throw Error(ErrorCode::WindowTooLong, "n must be at least the window length m");
  }
}

}  // namespace

MgfResult finite_mgf_lemma(const KrausFamily& fam, const PureState& psi, const TiltVector& t,
                           int n, const Tolerances& tol) {
  check_inputs(fam, psi, t, n);
  BlockOperator y = boundary_operator(fam, t.level(), tol);
  double log_scale = 0.0;
  for (int step = 0; step < n - t.level() + 1; ++step) {
    y = apply_tilted(fam, t, y);
    double top = 0.0;
    for (const auto& b : y.blocks()) top = std::max(top, b.cwiseAbs().maxCoeff());
    if (!(top > 0.0)) throw Error(ErrorCode::NumericalUnderflow, "tilted iterate vanished");
    y *= 1.0 / top;
    log_scale += std::log(top);
  }
  const CVector& v = psi.amplitudes();
  const double pairing = v.dot(y.block_sum() * v).real();
  if (!(pairing > 0.0)) throw Error(ErrorCode::NumericalUnderflow, "moment generating function vanished");
  return make_result(n, t, log_scale + std::log(pairing));
}

namespace {

struct BruteForce {
  const KrausFamily& fam;
  const TiltVector& t;
  int n;
  int m;
  std::size_t windows;  // k^m
  double shift;
  double total = 0.0;

  void walk(const CVector& v, int depth, std::size_t recent, double weight) {
    if (depth == n) {
      total += v.squaredNorm() * std::exp(weight - shift);
      return;
    }
    const auto k = static_cast<std::size_t>(fam.outcomes());
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t next = (recent * k + i) % windows;
      const double w = depth + 1 >= m ? weight + t[next] : weight;
      walk(fam[static_cast<int>(i)] * v, depth + 1, next, w);
    }
  }
};

}  // namespace

MgfResult finite_mgf_bruteforce(const KrausFamily& fam, const PureState& psi,
                                const TiltVector& t, int n) {
  check_inputs(fam, psi, t, n);
  checked_power(fam.outcomes(), n, std::size_t{1} << 20);
  const double shift = std::max(0.0, t.values().maxCoeff()) * (n - t.level() + 1);
  BruteForce walker{fam, t, n, t.level(), t.size(), shift};
  walker.walk(psi.amplitudes(), 0, 0, 0.0);
  if (!(walker.total > 0.0)) throw Error(ErrorCode::NumericalUnderflow, "moment generating function vanished");
  return make_result(n, t, shift + std::log(walker.total));
}

}  // namespace qldp
