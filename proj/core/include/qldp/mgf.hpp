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

#include "qldp/kraus.hpp"
#include "qldp/tilted.hpp"
#include "qldp/tolerances.hpp"

namespace qldp {

/// Gamma_n^(m)(t) = E exp(n <P_n^(m), t>) for a chain started in psi.
struct MgfResult {
  int n = 0;
  int m = 0;
  RVector t;
  double value = 0.0;      // may be +inf when only log_value is representable
  double log_value = 0.0;
};

/// Gamma via n-m+1 applications of the unrestricted tilted map to M^(m),
/// paired with psi. Iterates are rescaled each step and the scale kept in
/// log_value, so large n does not overflow.
MgfResult finite_mgf_lemma(const KrausFamily& fam, const PureState& psi, const TiltVector& t,
                           int n, const Tolerances& tol = {});

/// Gamma by explicit summation over all k^n outcome strings. Reference
/// implementation; k^n is capped at 2^20.
MgfResult finite_mgf_bruteforce(const KrausFamily& fam, const PureState& psi,
                                const TiltVector& t, int n);

}  // namespace qldp
