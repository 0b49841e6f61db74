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


// Acceptance checks. Each criterion prints one line:
//   [PASS] criterion N <name>: <measured values>
//   [FAIL] criterion N <name>: <measured values>
// Usage: qldp_acceptance [--criterion N] [--cli path/to/qldp] [--workdir dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qldp/channel.hpp"
#include "qldp/ldp.hpp"
#include "qldp/mgf.hpp"
#include "qldp/models.hpp"
#include "qldp/tilted.hpp"
#include "qldp/trajectory.hpp"
#include "qldp/tuples.hpp"
#include "test_models.hpp"

namespace {

using namespace qldp;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::string cli;
  std::filesystem::path workdir;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

// The 20 seeded random primitive models shared by criteria 1 and 2.
std::vector<KrausFamily> oracle_models() {
  std::vector<KrausFamily> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    out.push_back(testing::random_primitive(2, seed % 2 == 1 ? 2 : 3, 1000 + seed));
  }
  return out;
}

Outcome oracle_equivalence(const Context&) {
  const auto start = Clock::now();
  double worst = 0.0;
  Rng rng(2024);
  for (const auto& fam : oracle_models()) {
    const int k = fam.outcomes();
    const auto psi = random_pure_state(2, rng);
    for (int m = 1; m <= 3; ++m) {
      const auto size = static_cast<Index>(checked_power(k, m, 1u << 20));
      const TiltVector t(m, k, testing::random_vector(size, -1.0, 1.0, rng));
      for (int n = m; n <= 8; ++n) {
        const double lemma = finite_mgf_lemma(fam, psi, t, n).value;
        const double brute = finite_mgf_bruteforce(fam, psi, t, n).value;
        worst = std::max(worst, std::abs(lemma - brute) / brute);
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-10 && elapsed < 60.0,
          "max relative difference " + sci(worst) + " (limit 1e-10), " + sci(elapsed) + " s (limit 60)"};
}

Outcome boundary_eigenvector(const Context&) {
  double worst_fixed = 0.0;
  double worst_f0 = 0.0;
  for (const auto& fam : oracle_models()) {
    for (int m = 1; m <= 3; ++m) {
      const auto boundary = boundary_operator(fam, m);
      auto image = apply_tilted(fam, TiltVector::zero(m, fam.outcomes()), boundary);
      image -= boundary;
      worst_fixed = std::max(worst_fixed, image.norm());
      worst_f0 = std::max(worst_f0, std::abs(scgf(fam, m, TiltVector::zero(m, fam.outcomes()))));
    }
  }
  return {worst_fixed <= 1e-12 && worst_f0 <= 1e-10,
          "max ||T_0(M) - M|| " + sci(worst_fixed) + " (limit 1e-12), max |F(0)| " + sci(worst_f0) +
              " (limit 1e-10)"};
}

Outcome omega_independence(const Context&) {
  double worst = 0.0;
  for (double w : linspace(0.1, 3.04, 20)) {
    const TiltedSpectrum spectrum(example2(w), 1);
    for (double s : linspace(-2.0, 2.0, 9)) {
      RVector t(2);
      t << s, 0.0;
      const double r = std::exp(spectrum.scgf(t));
      worst = std::max(worst, std::abs(r - 0.5 * (std::exp(s) + 1.0)));
    }
  }
  return {worst <= 1e-8, "max |r - (e^s + 1)/2| " + sci(worst) + " (limit 1e-8)"};
}

Outcome pair_probabilities(const Context&) {
  double worst = 0.0;
  for (double w : linspace(0.1, 3.04, 20)) {
    const RVector p = stationary_string_probabilities(example2(w), 2);
    const double c = std::sin(w) * std::sin(w) * std::cos(w);
    worst = std::max(worst, std::abs(p(0) - 0.25 * (1.0 - c)));
    worst = std::max(worst, std::abs(p(1) - 0.25 * (1.0 + c)));
  }
  const double p00 = stationary_string_probabilities(example2(kPi / 3), 2)(0);
  const bool pass = worst <= 1e-10 && std::abs(p00 - 0.15625) <= 1e-10;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", p00);
  return {pass, "max deviation from (1 -/+ sin^2 w cos w)/4 " + sci(worst) +
                    " (limit 1e-10), p_00(pi/3) = " + buf + " (expected 0.15625)"};
}

Outcome spectral_endpoints(const Context&) {
  auto sorted = [](const SpectrumReport& r) {
    std::vector<double> out;
    double imag = 0.0;
    for (const auto& z : r.eigenvalues) {
      out.push_back(z.real());
      imag = std::max(imag, std::abs(z.imag()));
    }
    std::sort(out.begin(), out.end());
    return std::make_pair(out, imag);
  };
  auto deviation = [](const std::vector<double>& got, const std::vector<double>& want) {
    double d = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) d = std::max(d, std::abs(got[i] - want[i]));
    return d;
  };
  const auto r0 = spectrum_report(example1(0.0));
  const auto r1 = spectrum_report(example1(1.0));
  const auto rm = spectrum_report(example1(0.5));
  const auto [v0, i0] = sorted(r0);
  const auto [v1, i1] = sorted(r1);
  const double d0 = std::max(deviation(v0, {0.0, 0.0, 1.0, 1.0}), i0);
  const double d1 = std::max(deviation(v1, {-1.0, 0.0, 0.0, 1.0}), i1);
  const bool pass = d0 <= 1e-10 && d1 <= 1e-10 && !r0.is_primitive && !r1.is_primitive && rm.is_primitive;
  return {pass, "delta=0 deviation " + sci(d0) + ", delta=1 deviation " + sci(d1) +
                    " (limit 1e-10); primitive at 0/1/0.5: " + (r0.is_primitive ? "yes" : "no") + "/" +
                    (r1.is_primitive ? "yes" : "no") + "/" + (rm.is_primitive ? "yes" : "no")};
}

Outcome coin_rate(const Context&) {
  const TiltedSpectrum spectrum(example2(kPi / 2), 1);
  double worst = 0.0;
  bool converged = true;
  for (int i = 1; i <= 9; ++i) {
    const double x0 = 0.1 * i;
    RVector x(2);
    x << x0, 1.0 - x0;
    const auto point = rate_function(spectrum, x);
    converged = converged && point.converged;
    worst = std::max(worst, std::abs(point.value - testing::coin_rate(x0)));
  }
  return {worst <= 1e-6 && converged, "max |I - closed form| " + sci(worst) + " (limit 1e-6)"};
}

Outcome clt_moments_check(const Context&) {
  double sum_err = 0.0, null_err = 0.0, grad_err = 0.0;
  Rng rng(77);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto fam = testing::random_primitive(2, seed % 2 == 1 ? 2 : 3, 2000 + seed);
    for (int m = 1; m <= 2; ++m) {
      const TiltedSpectrum spectrum(fam, m);
      const auto moments = clt_moments(spectrum);
      sum_err = std::max(sum_err, std::abs(moments.mean.sum() - 1.0));
      null_err = std::max(null_err, (moments.covariance * RVector::Ones(moments.mean.size()))
                                        .cwiseAbs()
                                        .maxCoeff());
      const RVector t = testing::random_vector(spectrum.tilt_size(), -1.0, 1.0, rng);
      const RVector g = spectrum.gradient(t);
      const double h = 1e-5;
      for (Index j = 0; j < t.size(); ++j) {
        RVector up = t, down = t;
        up(j) += h;
        down(j) -= h;
        const double fd = (spectrum.scgf(up) - spectrum.scgf(down)) / (2 * h);
        grad_err = std::max(grad_err, std::abs(g(j) - fd));
      }
    }
  }
  return {sum_err <= 1e-10 && null_err <= 1e-6 && grad_err <= 1e-6,
          "|sum p - 1| " + sci(sum_err) + " (limit 1e-10), |V 1| " + sci(null_err) +
              " (limit 1e-6), gradient vs differences " + sci(grad_err) + " (limit 1e-6)"};
}

Outcome monte_carlo_clt_check(const Context&) {
  const auto start = Clock::now();
  const auto fam = example2(kPi / 3);
  double worst_z = 0.0;
  double worst_frob = 0.0;
  for (int m = 1; m <= 2; ++m) {
    const auto mc = monte_carlo_clt(fam, PureState::basis(2, 0), 5000, 2000, m, 42);
    worst_z = std::max(worst_z, mc.z_scores.cwiseAbs().maxCoeff());
    worst_frob = std::max(worst_frob, mc.relative_frobenius);
  }
  const double elapsed = seconds_since(start);
  return {worst_z <= 4.0 && worst_frob <= 0.15 && elapsed < 300.0,
          "max |z| " + sci(worst_z) + " (limit 4), relative Frobenius " + sci(worst_frob) +
              " (limit 0.15), " + sci(elapsed) + " s (limit 300)"};
}

Outcome ld_tail(const Context&) {
  const auto start = Clock::now();
  const std::vector<std::size_t> ns{50, 100, 200};
  const auto report =
      ld_tail_estimate(example2(kPi / 2), PureState::basis(2, 0), 1, 0, 0.75, ns, 1000000, 42);
  const double elapsed = seconds_since(start);
  const double analytic = report.analytic.rate;
  bool pass = std::abs(analytic - 0.1308) <= 1e-4 && elapsed < 600.0;
  std::string detail = "analytic " + sci(analytic);
  double previous_error = INFINITY;
  for (const auto& e : report.estimates) {
    detail += "; n=" + std::to_string(e.n) + " hits " + std::to_string(e.hits);
    if (!e.rate) {
      detail += " rate unmeasurable";
      pass = false;
      continue;
    }
    const double rel = std::abs(*e.rate - analytic) / analytic;
    detail += " rate " + sci(*e.rate) + " (rel err " + sci(rel) + ")";
    pass = pass && rel <= 0.20 && rel < previous_error;
    previous_error = rel;
  }
  detail += "; limit 20%, " + sci(elapsed) + " s";
  return {pass, detail};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome determinism(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no --cli given"};
  const auto dir = ctx.workdir / "determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"model": "example2", "grid": {"start": 0.3, "stop": 2.8, "count": 5},
                "m_levels": [1, 2], "s_grid": [-0.5, 0.0, 0.5],
                "outputs": ["spectrum", "probs", "scgf", "scgf_deriv", "rate", "clt", "mc"],
                "mc": {"n": 300, "trials": 120, "seed": 9}})";
  }
  const std::vector<std::pair<std::string, std::string>> commands{
      {"probs", "probs --model example2 --param 1.0471975511965976 --m 2"},
      {"scgf", "scgf --model example1 --param 0.5 --m 2 --grid -1:1:5 --tilt-dir 1,-1,-1,1"},
      {"scgf_json", "scgf --model example2 --param 1.2 --m 1 --grid -1:1:3 --format json"},
      {"rate", "rate --model example2 --param 1.5707963267948966 --x 0.75,0.25 --x 0.3,0.7"},
      {"clt", "clt --model example2 --param 1.0471975511965976 --m 2 --format json"},
      {"simulate", "simulate --model example2 --param 1.0471975511965976 --n 400 --trials 5 --seed 11"},
  };
  std::vector<std::string> mismatched;
  for (int run = 0; run < 2; ++run) {
    for (const auto& [name, args] : commands) {
      const auto out = dir / (name + "_" + std::to_string(run) + ".out");
      const std::string cmd = "\"" + ctx.cli + "\" " + args + " --out \"" + out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
    }
    const auto sweep_dir = dir / ("sweep_" + std::to_string(run));
    const std::string cmd = "\"" + ctx.cli + "\" sweep \"" + (dir / "spec.json").string() + "\" --out \"" +
                            sweep_dir.string() + "\" 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
  }
  std::size_t compared = 0;
  for (const auto& [name, args] : commands) {
    const auto a = slurp(dir / (name + "_0.out"));
    if (a.empty() || a != slurp(dir / (name + "_1.out"))) mismatched.push_back(name);
    ++compared;
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir / "sweep_0")) {
    const auto name = entry.path().filename();
    if (slurp(entry.path()) != slurp(dir / "sweep_1" / name)) mismatched.push_back(name.string());
    ++compared;
  }
  std::string detail = std::to_string(compared) + " outputs compared";
  for (const auto& m : mismatched) detail += ", differs: " + m;
  return {mismatched.empty() && compared > 6, detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(const Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.workdir = std::filesystem::temp_directory_path() / "qldp_acceptance";
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (i + 1 >= argc) {
      std::cerr << "missing value for " << arg << "\n";
      return 1;
    }
    if (arg == "--criterion") only = std::atoi(argv[++i]);
    else if (arg == "--cli") ctx.cli = argv[++i];
    else if (arg == "--workdir") ctx.workdir = argv[++i];
    else {
      std::cerr << "unknown argument " << arg << "\n";
      return 1;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "boundary eigenvector", boundary_eigenvector},
      {3, "example 2 level-1 omega independence", omega_independence},
      {4, "example 2 pair probabilities", pair_probabilities},
      {5, "example 1 spectral endpoints", spectral_endpoints},
      {6, "fair-coin rate function", coin_rate},
      {7, "CLT moments", clt_moments_check},
      {8, "Monte Carlo CLT", monte_carlo_clt_check},
      {9, "LD tail", ld_tail},
      {10, "CLI determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome outcome;
    try {
      outcome = c.run(ctx);
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << " " << c.name
              << ": " << outcome.detail << std::endl;
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
