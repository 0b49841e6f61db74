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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qldp/kraus.hpp"
#include "qldp/ldp.hpp"
#include "qldp/rng.hpp"

namespace qldp {

/// One measurement record of the output process.
struct Trajectory {
  std::vector<int> outcomes;
  PureState final_state;
  std::uint64_t seed = 0;
  std::string model_hash;
};

struct SimulationOptions {
  std::size_t burn_in = 0;  // steps simulated and discarded before recording
};

/// Sequential unraveling: outcome i with probability ||V_i psi||^2, then
/// psi <- V_i psi / ||V_i psi||. The state is renormalized every step.
class TrajectorySampler {
 public:
  explicit TrajectorySampler(const KrausFamily& fam);

  void reset(const CVector& psi);
  int step(Rng& rng);
  CVector state() const;

 private:
  int dim_;
  int outcomes_;
  std::vector<Complex> kraus_;   // row-major, operator-major
  std::vector<Complex> psi_;
  std::vector<Complex> images_;  // V_i psi for every i
  std::vector<double> weights_;
};

Trajectory sample_trajectory(const KrausFamily& fam, const PureState& psi0, std::size_t n,
                             std::uint64_t seed, const SimulationOptions& opts = {});

/// Mixed initial state: the first draw picks an eigenvector of rho0 with
/// probability equal to its eigenvalue.
Trajectory sample_trajectory(const KrausFamily& fam, const DensityMatrix& rho0, std::size_t n,
                             std::uint64_t seed, const SimulationOptions& opts = {});

/// Frequencies of length-m windows over positions 1..n-m+1.
struct EmpiricalMeasure {
  int m = 1;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // big-endian tuple order
  RVector frequencies;
};

EmpiricalMeasure empirical_measure(std::span<const int> outcomes, int m, int k);

/// Streaming sliding-window counts.
class WindowCounter {
 public:
  WindowCounter(int m, int k);

  void reset();
  void push(int outcome) {
    recent_ = (recent_ * k_ + static_cast<std::size_t>(outcome)) % size_;
    if (++seen_ >= static_cast<std::size_t>(m_)) ++counts_[recent_];
  }
  std::size_t windows() const noexcept {
    return seen_ >= static_cast<std::size_t>(m_) ? seen_ - static_cast<std::size_t>(m_) + 1 : 0;
  }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  int m_;
  std::size_t k_;
  std::size_t size_;
  std::size_t recent_ = 0;
  std::size_t seen_ = 0;
  std::vector<std::uint64_t> counts_;
};

/// Statistics of sqrt(n) (P_n^(m) - p^(m)) over independent trajectories.
struct MonteCarloClt {
  int m = 1;
  std::size_t n = 0;
  std::size_t trials = 0;
  RVector sample_mean;
  RMatrix sample_covariance;
  RVector z_scores;           // sample mean over its standard error
  CltMoments analytic;
  double relative_frobenius = 0.0;  // ||cov - V||_F / ||V||_F
};

MonteCarloClt monte_carlo_clt(const KrausFamily& fam, const PureState& psi0, std::size_t n,
                              std::size_t trials, int m, std::uint64_t base_seed,
                              const Tolerances& tol = {});

struct TailEstimate {
  std::size_t n = 0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double probability = 0.0;
  double wilson_low = 0.0;   // 95% interval for the probability
  double wilson_high = 0.0;
  std::optional<double> rate;  // -(1/n) log probability; absent on zero hits
  std::optional<double> rate_low;
  std::optional<double> rate_high;
  bool zero_hits = false;
};

struct TailReport {
  int m = 1;
  Index component = 0;
  double threshold = 0.0;
  double stationary_value = 0.0;
  TailBound analytic;
  std::vector<TailEstimate> estimates;
};

/// Estimates -(1/n) log P(P_n^(m)[component] >= a) by direct simulation and
/// the analytic rate inf { I(x) : x[component] >= a }.
TailReport ld_tail_estimate(const KrausFamily& fam, const PureState& psi0, int m,
                            Index component, double a, std::span<const std::size_t> n_list,
                            std::size_t trials, std::uint64_t base_seed,
                            const Tolerances& tol = {});

/// Wilson score interval at normal quantile z.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 1.96);

/// "outcome:run" tokens separated by spaces, e.g. "0:3 1:1".
std::string run_length_encode(std::span<const int> outcomes);
std::vector<int> run_length_decode(const std::string& text);

/// CSV with header "seed,n,outcomes_rle".
void write_trajectory_csv(std::ostream& out, std::span<const Trajectory> batch);

}  // namespace qldp
