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


#include "qldp/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qldp/error.hpp"
#include "qldp/perron.hpp"

namespace qldp {

TiltedSpectrum::TiltedSpectrum(KrausFamily fam, int m, Tolerances tol)
    : fam_(std::move(fam)), level_(m), tilt_size_(0), tol_(tol) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "level m must be >= 1");
  spectrum_ = require_primitive(fam_, tol_);
  support_ = support_projections(boundary_operator(fam_, m, tol_), tol_.rank_tol);
  tilt_size_ = static_cast<Index>(TiltVector::zero(m, fam_.outcomes()).size());
}

TiltVector TiltedSpectrum::tilt(const RVector& t) const {
  return TiltVector(level_, fam_.outcomes(), t);
}

TiltedSpectrum::Evaluation TiltedSpectrum::evaluate(const RVector& t) const {
  const TiltVector checked = tilt(t);
  const double shift = checked.values().maxCoeff();
  const TiltVector shifted(level_, fam_.outcomes(), checked.values().array() - shift);
  const RestrictedTiltedMap map(fam_, shifted, support_);
  const PerronData perron = restricted_perron(map, PerronMethod::Auto, tol_);

  Evaluation out;
  out.value = shift + std::log(perron.spectral_radius);
  out.gap = perron.gap;
  if (perron.gap <= tol_.min_gap) {
    throw Error(ErrorCode::DegeneratePerronEigenvalue,
                "Perron gap " + std::to_string(perron.gap) + " too small to differentiate");
  }
  const auto pairings = map.derivative_pairings(perron.left, perron.right);
  const Complex scale = perron.spectral_radius * perron.left.dot(perron.right);
  out.gradient.resize(tilt_size_);
  for (Index j = 0; j < tilt_size_; ++j) {
    out.gradient(j) = (pairings[static_cast<std::size_t>(j)] / scale).real();
  }
  return out;
}

double TiltedSpectrum::scgf(const RVector& t) const {
  const TiltVector checked = tilt(t);
  const double shift = checked.values().maxCoeff();
  const TiltVector shifted(level_, fam_.outcomes(), checked.values().array() - shift);
  const RestrictedTiltedMap map(fam_, shifted, support_);
  return shift + std::log(restricted_perron(map, PerronMethod::Auto, tol_).spectral_radius);
}

RVector TiltedSpectrum::gradient(const RVector& t) const { return evaluate(t).gradient; }

RMatrix TiltedSpectrum::hessian(const RVector& t, double step) const {
  RMatrix h(tilt_size_, tilt_size_);
  for (Index j = 0; j < tilt_size_; ++j) {
    RVector plus = t;
    RVector minus = t;
    plus(j) += step;
    minus(j) -= step;
    h.col(j) = (gradient(plus) - gradient(minus)) / (2.0 * step);
  }
  return (h + h.transpose()) / 2.0;
}

double scgf(const KrausFamily& fam, int m, const TiltVector& t, const Tolerances& tol) {
  if (t.level() != m) throw Error(ErrorCode::DimensionMismatch, "tilt level differs from m");
  return TiltedSpectrum(fam, m, tol).scgf(t.values());
}

namespace {

void check_simplex(const RVector& x, Index size) {
  if (x.size() != size) {
    throw Error(ErrorCode::NotOnSimplex, "x must have k^m = " + std::to_string(size) + " entries");
  }
  if (!x.allFinite() || x.minCoeff() < -1e-9 || std::abs(x.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotOnSimplex, "x is not a probability vector");
  }
}

RVector project_gauge(const RVector& v) {
  return v.array() - v.mean();
}

}  // namespace

RatePoint rate_function(const TiltedSpectrum& spectrum, const RVector& x,
                        const RateOptions& opts) {
  const Index size = spectrum.tilt_size();
  check_simplex(x, size);

  RatePoint out;
  out.x = x;
  RVector t = RVector::Zero(size);
  auto objective = [&](const RVector& s) { return s.dot(x) - spectrum.scgf(s); };

  auto eval = spectrum.evaluate(t);
  double value = t.dot(x) - eval.value;
  bool plain_ascent = false;
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    const RVector g = project_gauge(x - eval.gradient);
    out.gradient_norm = g.norm();
    if (out.gradient_norm <= opts.gradient_tol) {
      out.converged = true;
      break;
    }

    RVector dir = g;
    if (!plain_ascent) {
      // Newton direction on the gauge plane; the all-ones null vector of
      // the Hessian is pinned by the rank-one term.
      RMatrix h = spectrum.hessian(t, opts.hessian_step);
      h += RMatrix::Constant(size, size, 1.0 / static_cast<double>(size));
      const double ridge = 1e-12 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
      h.diagonal().array() += ridge;
      const RVector newton = project_gauge(h.ldlt().solve(g));
      if (newton.allFinite() && newton.dot(g) > 0.0) dir = newton;
    }
    if (dir.norm() > opts.max_step) dir *= opts.max_step / dir.norm();

    bool accepted = false;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      const double alpha = std::ldexp(1.0, -attempt);
      const RVector trial = t + alpha * dir;
      try {
        const double trial_value = objective(trial);
        const bool sufficient = trial_value >= value + 1e-4 * alpha * dir.dot(g);
        // Near the optimum the objective change drops below rounding; accept
        // steps that keep the value and shrink the gradient.
        const bool flat = trial_value >= value - 1e-13 * std::max(1.0, std::abs(value));
        if (sufficient || flat) {
          auto trial_eval = spectrum.evaluate(trial);
          if (sufficient ||
              project_gauge(x - trial_eval.gradient).norm() < out.gradient_norm) {
            eval = std::move(trial_eval);
            t = trial;
            value = t.dot(x) - eval.value;
            accepted = true;
          }
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegeneratePerronEigenvalue) throw;
      }
    }
    out.iterations = it + 1;
    if (accepted) {
      plain_ascent = false;
    } else if (!plain_ascent) {
      plain_ascent = true;
    } else {
      break;  // no ascent possible at working precision
    }
  }
  if (!out.converged) {
    out.gradient_norm = project_gauge(x - eval.gradient).norm();
    out.converged = out.gradient_norm <= opts.gradient_tol;
  }
  out.value = value;
  out.argmax_t = t;
  return out;
}

RatePoint rate_function(const KrausFamily& fam, int m, const RVector& x,
                        const RateOptions& opts, const Tolerances& tol) {
  return rate_function(TiltedSpectrum(fam, m, tol), x, opts);
}

CltMoments clt_moments(const TiltedSpectrum& spectrum, double step) {
  const RVector zero = RVector::Zero(spectrum.tilt_size());
  CltMoments out;
  out.m = spectrum.level();
  out.mean = spectrum.gradient(zero);
  out.covariance = spectrum.hessian(zero, step);
  return out;
}

CltMoments clt_moments(const KrausFamily& fam, int m, const Tolerances& tol) {
  return clt_moments(TiltedSpectrum(fam, m, tol));
}

TailBound tail_rate_bound(const TiltedSpectrum& spectrum, Index component, double a) {
  const Index size = spectrum.tilt_size();
  if (component < 0 || component >= size) {
    throw Error(ErrorCode::InvalidArgument, "component index out of range");
  }
  if (!(a < 1.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be below 1");

  auto tilt_at = [&](double lambda) {
    RVector t = RVector::Zero(size);
    t(component) = lambda;
    return t;
  };
  // Derivative of the dual objective lambda a - F(lambda e_c).
  auto slope = [&](double lambda) { return a - spectrum.gradient(tilt_at(lambda))(component); };
  auto dual = [&](double lambda) { return lambda * a - spectrum.scgf(tilt_at(lambda)); };

  TailBound out;
  if (slope(0.0) <= 0.0) {
    out.converged = true;
    return out;  // a at or below the typical value
  }

  double lo = 0.0;
  double hi = 1.0;
  while (slope(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) {
      out.multiplier = hi;
      out.rate = dual(hi);
      out.converged = false;  // sup not attained at finite lambda
      return out;
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  out.multiplier = 0.5 * (lo + hi);
  out.rate = dual(out.multiplier);
  out.converged = true;
  return out;
}

}  // namespace qldp
