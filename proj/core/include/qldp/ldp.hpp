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

#include <optional>

#include "qldp/channel.hpp"
#include "qldp/kraus.hpp"
#include "qldp/tilted.hpp"
#include "qldp/tolerances.hpp"

namespace qldp {

/// Limiting scaled cumulant generating function F(t) = log r(T~_{t,m}) of a
/// primitive chain at a fixed level m, with its derivatives.
///
/// Construction checks primitivity (NotPrimitiveError otherwise) and caches
/// the support projections of M^(m); evaluations are then independent and
/// safe to run concurrently. Tilts are shifted by max(t) before
/// exponentiation, using F(t + c 1) = F(t) + c.
class TiltedSpectrum {
 public:
  TiltedSpectrum(KrausFamily fam, int m, Tolerances tol = {});

  struct Evaluation {
    double value = 0.0;
    RVector gradient;
    double gap = 0.0;
  };

  int level() const noexcept { return level_; }
  int outcomes() const noexcept { return fam_.outcomes(); }
  Index tilt_size() const noexcept { return tilt_size_; }
  const KrausFamily& family() const noexcept { return fam_; }
  const SpectrumReport& spectrum() const noexcept { return spectrum_; }
  const SupportProjection& support() const noexcept { return support_; }
  const Tolerances& tolerances() const noexcept { return tol_; }

  double scgf(const RVector& t) const;
  RVector gradient(const RVector& t) const;
  Evaluation evaluate(const RVector& t) const;

  /// Symmetrized central differences of the analytic gradient.
  RMatrix hessian(const RVector& t, double step = 1e-4) const;

 private:
  TiltVector tilt(const RVector& t) const;

  KrausFamily fam_;
  int level_;
  Index tilt_size_;
  Tolerances tol_;
  SpectrumReport spectrum_;
  SupportProjection support_;
};

double scgf(const KrausFamily& fam, int m, const TiltVector& t, const Tolerances& tol = {});

struct RateOptions {
  double gradient_tol = 1e-8;
  std::size_t max_iter = 10000;
  double hessian_step = 1e-4;
  double max_step = 10.0;  // Newton step length cap
};

struct RatePoint {
  RVector x;
  double value = 0.0;          // I(x), or a lower bound when !converged
  std::optional<RVector> argmax_t;
  bool converged = false;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
};

/// I(x) = sup_t <t, x> - F(t) by damped Newton ascent on the gauge
/// sum(t) = 0, with gradient-ascent fallback. Throws NotOnSimplex when x is
/// not a probability vector within 1e-9.
RatePoint rate_function(const TiltedSpectrum& spectrum, const RVector& x,
                        const RateOptions& opts = {});
RatePoint rate_function(const KrausFamily& fam, int m, const RVector& x,
                        const RateOptions& opts = {}, const Tolerances& tol = {});

struct CltMoments {
  int m = 1;
  RVector mean;        // p^(m)
  RMatrix covariance;  // V^(m)
};

CltMoments clt_moments(const TiltedSpectrum& spectrum, double step = 1e-4);
CltMoments clt_moments(const KrausFamily& fam, int m, const Tolerances& tol = {});

struct TailBound {
  double rate = 0.0;        // inf { I(x) : x_c >= a }
  double multiplier = 0.0;  // optimal lambda in the dual problem
  bool converged = false;
};

/// inf { I(x) : x[component] >= a } through the dual
/// sup_{lambda >= 0} lambda a - F(lambda e_c).
TailBound tail_rate_bound(const TiltedSpectrum& spectrum, Index component, double a);

}  // namespace qldp
