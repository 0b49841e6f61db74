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


#include "qldp/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <ostream>
#include <sstream>

#include "qldp/error.hpp"
#include "qldp/model_io.hpp"
#include "qldp/parallel.hpp"
#include "qldp/tuples.hpp"

namespace qldp {

TrajectorySampler::TrajectorySampler(const KrausFamily& fam)
    : dim_(fam.dim()), outcomes_(fam.outcomes()),
      kraus_(static_cast<std::size_t>(fam.outcomes() * fam.dim() * fam.dim())),
      psi_(static_cast<std::size_t>(fam.dim())),
      images_(static_cast<std::size_t>(fam.outcomes() * fam.dim())),
      weights_(static_cast<std::size_t>(fam.outcomes())) {
  std::size_t pos = 0;
  for (int i = 0; i < outcomes_; ++i) {
    for (int r = 0; r < dim_; ++r) {
      for (int c = 0; c < dim_; ++c) kraus_[pos++] = fam[i](r, c);
    }
  }
}

void TrajectorySampler::reset(const CVector& psi) {
  if (psi.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  for (int i = 0; i < dim_; ++i) psi_[static_cast<std::size_t>(i)] = psi(i);
}

int TrajectorySampler::step(Rng& rng) {
  const auto d = static_cast<std::size_t>(dim_);
  double total = 0.0;
  const Complex* v = kraus_.data();
  Complex* img = images_.data();
  for (int i = 0; i < outcomes_; ++i) {
    double w = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) acc += v[c] * psi_[c];
      img[r] = acc;
      w += std::norm(acc);
      v += d;
    }
    img += d;
    weights_[static_cast<std::size_t>(i)] = w;
    total += w;
  }
  if (total < 1e-300) {
    throw Error(ErrorCode::NumericalUnderflow, "all outcome weights vanished");
  }
  const double u = rng.uniform() * total;
  int chosen = outcomes_ - 1;
  double cumulative = 0.0;
  for (int i = 0; i < outcomes_; ++i) {
    cumulative += weights_[static_cast<std::size_t>(i)];
    if (u < cumulative) {
      chosen = i;
      break;
    }
  }
  while (weights_[static_cast<std::size_t>(chosen)] <= 0.0) --chosen;
  const double scale = 1.0 / std::sqrt(weights_[static_cast<std::size_t>(chosen)]);
  const Complex* src = images_.data() + static_cast<std::size_t>(chosen) * d;
  for (std::size_t r = 0; r < d; ++r) psi_[r] = src[r] * scale;
  return chosen;
}

CVector TrajectorySampler::state() const {
  CVector out(dim_);
  for (int i = 0; i < dim_; ++i) out(i) = psi_[static_cast<std::size_t>(i)];
  return out;
}

namespace {

Trajectory run_sampler(const KrausFamily& fam, const CVector& psi0, std::size_t n,
                       std::uint64_t seed, Rng& rng, const SimulationOptions& opts) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "trajectory length must be >= 1");
  TrajectorySampler sampler(fam);
  sampler.reset(psi0);
  for (std::size_t i = 0; i < opts.burn_in; ++i) sampler.step(rng);
  std::vector<int> outcomes(n);
  for (auto& o : outcomes) o = sampler.step(rng);
  CVector final_state = sampler.state();
  final_state /= final_state.norm();
  return Trajectory{std::move(outcomes), PureState(std::move(final_state)), seed, model_hash(fam)};
}

}  // namespace

Trajectory sample_trajectory(const KrausFamily& fam, const PureState& psi0, std::size_t n,
                             std::uint64_t seed, const SimulationOptions& opts) {
  if (psi0.dim() != fam.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  Rng rng(seed);
  return run_sampler(fam, psi0.amplitudes(), n, seed, rng, opts);
}

Trajectory sample_trajectory(const KrausFamily& fam, const DensityMatrix& rho0, std::size_t n,
                             std::uint64_t seed, const SimulationOptions& opts) {
  if (rho0.dim() != fam.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho0.matrix());
  Rng rng(seed);
  const double u = rng.uniform();
  double cumulative = 0.0;
  Index pick = es.eigenvalues().size() - 1;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    cumulative += std::max(0.0, es.eigenvalues()(i));
    if (u < cumulative) {
      pick = i;
      break;
    }
  }
  return run_sampler(fam, es.eigenvectors().col(pick), n, seed, rng, opts);
}

WindowCounter::WindowCounter(int m, int k)
    : m_(m), k_(static_cast<std::size_t>(k)),
      size_(checked_power(k, m, std::size_t{1} << 26)), counts_(size_, 0) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
}

void WindowCounter::reset() {
  recent_ = 0;
  seen_ = 0;
  std::fill(counts_.begin(), counts_.end(), 0);
}

EmpiricalMeasure empirical_measure(std::span<const int> outcomes, int m, int k) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
  if (outcomes.size() < static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::WindowTooLong, "window longer than the trajectory");
  }
  WindowCounter counter(m, k);
  for (int o : outcomes) {
    if (o < 0 || o >= k) throw Error(ErrorCode::InvalidArgument, "outcome out of range");
    counter.push(o);
  }
  EmpiricalMeasure out;
  out.m = m;
  out.n = outcomes.size();
  out.counts = counter.counts();
  const auto windows = static_cast<double>(counter.windows());
  out.frequencies.resize(static_cast<Index>(out.counts.size()));
  for (std::size_t j = 0; j < out.counts.size(); ++j) {
    out.frequencies(static_cast<Index>(j)) = static_cast<double>(out.counts[j]) / windows;
  }
  return out;
}

MonteCarloClt monte_carlo_clt(const KrausFamily& fam, const PureState& psi0, std::size_t n,
                              std::size_t trials, int m, std::uint64_t base_seed,
                              const Tolerances& tol) {
  if (trials < 100) throw Error(ErrorCode::InvalidArgument, "need at least 100 trials");
  if (n < static_cast<std::size_t>(m)) throw Error(ErrorCode::WindowTooLong, "n < m");
  if (psi0.dim() != fam.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");

  MonteCarloClt out;
  out.m = m;
  out.n = n;
  out.trials = trials;
  out.analytic = clt_moments(fam, m, tol);
  const RVector& p = out.analytic.mean;
  const Index size = p.size();
  const double root_n = std::sqrt(static_cast<double>(n));

  RMatrix deviations(static_cast<Index>(trials), size);
  parallel_for(trials, [&](std::size_t trial) {
    Rng rng(derive_seed(base_seed, trial));
    TrajectorySampler sampler(fam);
    sampler.reset(psi0.amplitudes());
    WindowCounter counter(m, fam.outcomes());
    for (std::size_t s = 0; s < n; ++s) counter.push(sampler.step(rng));
    const auto windows = static_cast<double>(counter.windows());
    for (Index j = 0; j < size; ++j) {
      const double freq = static_cast<double>(counter.counts()[static_cast<std::size_t>(j)]) / windows;
      deviations(static_cast<Index>(trial), j) = root_n * (freq - p(j));
    }
  });

  out.sample_mean = deviations.colwise().mean();
  const RMatrix centered = deviations.rowwise() - out.sample_mean.transpose();
  out.sample_covariance = centered.transpose() * centered / static_cast<double>(trials - 1);
  out.z_scores.resize(size);
  for (Index j = 0; j < size; ++j) {
    const double se = std::sqrt(out.sample_covariance(j, j) / static_cast<double>(trials));
    out.z_scores(j) = se > 0.0 ? out.sample_mean(j) / se
                               : (out.sample_mean(j) == 0.0 ? 0.0
                                                            : std::copysign(INFINITY, out.sample_mean(j)));
  }
  const double ref = out.analytic.covariance.norm();
  out.relative_frobenius = ref > 0.0 ? (out.sample_covariance - out.analytic.covariance).norm() / ref
                                     : out.sample_covariance.norm();
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (phat + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TailReport ld_tail_estimate(const KrausFamily& fam, const PureState& psi0, int m,
                            Index component, double a, std::span<const std::size_t> n_list,
                            std::size_t trials, std::uint64_t base_seed,
                            const Tolerances& tol) {
  if (psi0.dim() != fam.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "need at least one trial");
  const TiltedSpectrum spectrum(fam, m, tol);
  const RVector p = stationary_string_probabilities(fam, m, tol);
  if (component < 0 || component >= p.size()) {
    throw Error(ErrorCode::InvalidArgument, "component index out of range");
  }
  if (!(a >= p(component) - 1e-12) || !(a < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "threshold must lie in [stationary value, 1)");
  }

  TailReport report;
  report.m = m;
  report.component = component;
  report.threshold = a;
  report.stationary_value = p(component);
  report.analytic = tail_rate_bound(spectrum, component, a);

  for (std::size_t n : n_list) {
    if (n < static_cast<std::size_t>(m)) throw Error(ErrorCode::WindowTooLong, "n < m");
    const double windows = static_cast<double>(n - static_cast<std::size_t>(m) + 1);
    const double needed = a * windows - 1e-9;
    const std::uint64_t n_seed = derive_seed(base_seed, n);
    std::vector<unsigned char> hit(trials, 0);
    parallel_for(trials, [&](std::size_t trial) {
      Rng rng(derive_seed(n_seed, trial));
      TrajectorySampler sampler(fam);
      sampler.reset(psi0.amplitudes());
      WindowCounter counter(m, fam.outcomes());
      for (std::size_t s = 0; s < n; ++s) counter.push(sampler.step(rng));
      hit[trial] = static_cast<double>(counter.counts()[static_cast<std::size_t>(component)]) >= needed;
    });

    TailEstimate est;
    est.n = n;
    est.trials = trials;
    for (unsigned char h : hit) est.hits += h;
    est.probability = static_cast<double>(est.hits) / static_cast<double>(trials);
    std::tie(est.wilson_low, est.wilson_high) = wilson_interval(est.hits, trials);
    const double nd = static_cast<double>(n);
    if (est.hits == 0) {
      est.zero_hits = true;
    } else {
      est.rate = -std::log(est.probability) / nd;
      est.rate_low = -std::log(est.wilson_high) / nd;
      if (est.wilson_low > 0.0) est.rate_high = -std::log(est.wilson_low) / nd;
    }
    if (est.zero_hits && est.wilson_high > 0.0) est.rate_low = -std::log(est.wilson_high) / nd;
    report.estimates.push_back(est);
  }
  return report;
}

std::string run_length_encode(std::span<const int> outcomes) {
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < outcomes.size()) {
    std::size_t j = i;
    while (j < outcomes.size() && outcomes[j] == outcomes[i]) ++j;
    if (!first) out << ' ';
    out << outcomes[i] << ':' << (j - i);
    first = false;
    i = j;
  }
  return out.str();
}

std::vector<int> run_length_decode(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "bad run-length token " + token);
    const int value = std::stoi(token.substr(0, colon));
    const auto run = std::stoull(token.substr(colon + 1));
    out.insert(out.end(), run, value);
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, std::span<const Trajectory> batch) {
  out << "seed,n,outcomes_rle\n";
  for (const auto& t : batch) {
    out << t.seed << ',' << t.outcomes.size() << ',' << run_length_encode(t.outcomes) << '\n';
  }
}

}  // namespace qldp
