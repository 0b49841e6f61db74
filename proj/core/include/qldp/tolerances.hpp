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

#include <cstddef>

namespace qldp {

/// Numerical thresholds shared across modules. Defaults are the documented
/// ones; every CLI `--tol-*` flag overrides one field.
struct Tolerances {
  double norm_tol = 1e-10;        // residual of sum V^dagger V - 1
  double peripheral_tol = 1e-8;   // |lambda| >= r - tol counts as peripheral
  double stationary_rank_tol = 1e-9;  // relative to largest eigenvalue of rho_ss
  double rank_tol = 1e-10;        // support projections of M^(m), relative
  double power_tol = 1e-12;       // power-iteration residual, relative
  std::size_t power_max_iter = 100000;
  std::size_t dense_limit = 4096;      // restricted dimension solved densely
  std::size_t size_cap = 65536;        // k^(m-1) d^2 and k^m upper bound
  double min_gap = 1e-10;         // Perron gap below which derivatives are refused
};

}  // namespace qldp
