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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qldp/channel.hpp"
#include "qldp/error.hpp"
#include "qldp/format.hpp"
#include "qldp/ldp.hpp"
#include "qldp/model_io.hpp"
#include "qldp/models.hpp"
#include "qldp/sweep.hpp"
#include "qldp/trajectory.hpp"
#include "qldp/tuples.hpp"

namespace {

using nlohmann::json;
using qldp::Error;
using qldp::ErrorCode;
using qldp::format_double;

struct ModelOptions {
  std::string name = "example1";
  std::string file;
  double param = 0.5;
  int m = 1;
};

struct OutputOptions {
  std::string out;
  std::string format = "csv";
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
  return out;
}

// "start:stop:count" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_list(item).at(0));
  if (parts.size() != 3 || parts[2] < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid must be start:stop:count");
  }
  const auto count = static_cast<std::size_t>(parts[2]);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? parts[0]
                        : parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) /
                                         static_cast<double>(count - 1);
  }
  return out;
}

qldp::RVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const qldp::RVector>(v.data(), static_cast<qldp::Index>(v.size()));
}

std::vector<double> to_std(const qldp::RVector& v) { return {v.data(), v.data() + v.size()}; }

qldp::KrausFamily make_model(const ModelOptions& opts, const qldp::Tolerances& tol) {
  if (!opts.file.empty()) return qldp::load_model(opts.file, tol.norm_tol);
  auto fam = qldp::example_model(opts.name, opts.param);
  qldp::require_normalized(fam, tol.norm_tol);
  return fam;
}

json tolerances_json(const qldp::Tolerances& tol) {
  return json{{"norm_tol", tol.norm_tol},         {"peripheral_tol", tol.peripheral_tol},
              {"stationary_rank_tol", tol.stationary_rank_tol},
              {"rank_tol", tol.rank_tol},         {"power_tol", tol.power_tol},
              {"power_max_iter", tol.power_max_iter},
              {"dense_limit", tol.dense_limit},   {"size_cap", tol.size_cap},
              {"min_gap", tol.min_gap}};
}

json meta_json(const qldp::KrausFamily& fam, int m, const qldp::Tolerances& tol) {
  return json{{"model_hash", qldp::model_hash(fam)}, {"m", m}, {"tolerances", tolerances_json(tol)}};
}

std::string labels_header(const char* prefix, int k, int m) {
  std::string out;
  const std::size_t size = qldp::checked_power(k, m, std::size_t{1} << 40);
  for (std::size_t j = 0; j < size; ++j) out += std::string(",") + prefix + qldp::tuple_label(j, k, m);
  return out;
}

std::string join_values(const qldp::RVector& v) {
  std::string out;
  for (qldp::Index j = 0; j < v.size(); ++j) out += "," + format_double(v(j));
  return out;
}

// Writes text to --out or stdout.
void emit(const OutputOptions& out, const std::string& text) {
  if (out.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(out.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + out.out);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int run_check(const std::string& path, bool require_primitive, const qldp::Tolerances& tol,
              const OutputOptions& out) {
  const qldp::KrausFamily fam(qldp::load_model(path, tol.norm_tol));
  const auto validation = qldp::validate_kraus(fam, tol.norm_tol);
  const auto report = qldp::spectrum_report(fam, tol);
  if (out.format == "json") {
    json eig = json::array();
    for (const auto& z : report.eigenvalues) eig.push_back({z.real(), z.imag()});
    json doc{{"d", fam.dim()},
             {"k", fam.outcomes()},
             {"residual", validation.residual},
             {"eigenvalues", eig},
             {"spectral_radius", report.spectral_radius},
             {"peripheral_count", report.peripheral_count},
             {"stationary_rank", report.stationary_rank},
             {"is_irreducible", report.is_irreducible},
             {"is_primitive", report.is_primitive},
             {"spectral_gap", report.spectral_gap},
             {"meta", meta_json(fam, 1, tol)}};
    emit(out, dump(doc));
  } else {
    std::string text = "index,re,im,abs\n";
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
      const auto z = report.eigenvalues[i];
      text += std::to_string(i) + "," + format_double(z.real()) + "," + format_double(z.imag()) +
              "," + format_double(std::abs(z)) + "\n";
    }
    emit(out, text);
    std::cerr << "residual " << format_double(validation.residual) << ", primitive "
              << (report.is_primitive ? "yes" : "no") << ", stationary rank "
              << report.stationary_rank << "\n";
  }
  if (require_primitive && !report.is_primitive) throw qldp::NotPrimitiveError(report);
  return 0;
}

int run_probs(const ModelOptions& mo, const qldp::Tolerances& tol, const OutputOptions& out) {
  const auto fam = make_model(mo, tol);
  const auto p = qldp::stationary_string_probabilities(fam, mo.m, tol);
  const int k = fam.outcomes();
  if (out.format == "json") {
    json labels = json::array();
    for (qldp::Index j = 0; j < p.size(); ++j) labels.push_back(qldp::tuple_label(static_cast<std::size_t>(j), k, mo.m));
    emit(out, dump(json{{"tuples", labels}, {"value", to_std(p)}, {"meta", meta_json(fam, mo.m, tol)}}));
    return 0;
  }
  std::string text = "tuple,p\n";
  for (qldp::Index j = 0; j < p.size(); ++j) {
    text += qldp::tuple_label(static_cast<std::size_t>(j), k, mo.m) + "," + format_double(p(j)) + "\n";
  }
  emit(out, text);
  return 0;
}

qldp::RVector tilt_direction(const std::string& text, int m, int k) {
  return text.empty() ? qldp::default_tilt_direction(m, k) : to_vector(parse_list(text));
}

// Tilts requested either explicitly (--t) or along s -> s u.
std::vector<qldp::RVector> tilt_points(const std::vector<std::string>& explicit_t,
                                       const std::string& grid, const std::string& dir, int m,
                                       int k, std::vector<double>& s_values) {
  std::vector<qldp::RVector> out;
  if (!explicit_t.empty()) {
    for (const auto& t : explicit_t) out.push_back(to_vector(parse_list(t)));
    return out;
  }
  const qldp::RVector u = tilt_direction(dir, m, k);
  s_values = grid.empty() ? qldp::default_s_grid() : parse_grid(grid);
  for (double s : s_values) out.push_back(s * u);
  return out;
}

int run_scgf(const ModelOptions& mo, const std::vector<std::string>& explicit_t,
             const std::string& grid, const std::string& dir, const qldp::Tolerances& tol,
             const OutputOptions& out) {
  const auto fam = make_model(mo, tol);
  const qldp::TiltedSpectrum spectrum(fam, mo.m, tol);
  std::vector<double> s_values;
  const auto tilts = tilt_points(explicit_t, grid, dir, mo.m, fam.outcomes(), s_values);
  const qldp::RVector u = s_values.empty() ? qldp::RVector() : tilt_direction(dir, mo.m, fam.outcomes());
  json records = json::array();
  std::string text = (s_values.empty() ? "" : "s,") + std::string("F,gap") +
                     labels_header("t_", fam.outcomes(), mo.m) +
                     labels_header("dF_dt_", fam.outcomes(), mo.m) + "\n";
  for (std::size_t i = 0; i < tilts.size(); ++i) {
    const auto ev = spectrum.evaluate(tilts[i]);
    if (out.format == "json") {
      json rec{{"t", to_std(tilts[i])},
               {"value", ev.value},
               {"gradient", to_std(ev.gradient)},
               {"gap", ev.gap},
               {"converged", true},
               {"meta", meta_json(fam, mo.m, tol)}};
      if (!s_values.empty()) {
        rec["s"] = s_values[i];
        rec["dF_ds"] = u.dot(ev.gradient);
      }
      records.push_back(std::move(rec));
    } else {
      if (!s_values.empty()) text += format_double(s_values[i]) + ",";
      text += format_double(ev.value) + "," + format_double(ev.gap) + join_values(tilts[i]) +
              join_values(ev.gradient) + "\n";
    }
  }
  emit(out, out.format == "json" ? dump(records) : text);
  return 0;
}

int run_rate(const ModelOptions& mo, const std::vector<std::string>& x_points,
             const std::string& grid, const std::string& dir, const qldp::Tolerances& tol,
             const OutputOptions& out) {
  const auto fam = make_model(mo, tol);
  const qldp::TiltedSpectrum spectrum(fam, mo.m, tol);
  std::vector<qldp::RVector> xs;
  if (!x_points.empty()) {
    for (const auto& x : x_points) xs.push_back(to_vector(parse_list(x)));
  } else {
    // dual points grad F(s u) along the tilt slice
    std::vector<double> s_values;
    for (const auto& t : tilt_points({}, grid, dir, mo.m, fam.outcomes(), s_values)) {
      xs.push_back(spectrum.gradient(t));
    }
  }
  json records = json::array();
  std::string text = "rate,converged,iterations,gradient_norm" +
                     labels_header("x_", fam.outcomes(), mo.m) +
                     labels_header("t_", fam.outcomes(), mo.m) + "\n";
  bool all_converged = true;
  for (const auto& x : xs) {
    const auto point = qldp::rate_function(spectrum, x);
    all_converged = all_converged && point.converged;
    const qldp::RVector t = point.argmax_t.value_or(qldp::RVector::Constant(x.size(), std::nan("")));
    if (out.format == "json") {
      records.push_back(json{{"x", to_std(x)},
                             {"value", point.value},
                             {"t", to_std(t)},
                             {"converged", point.converged},
                             {"iterations", point.iterations},
                             {"gradient_norm", point.gradient_norm},
                             {"meta", meta_json(fam, mo.m, tol)}});
    } else {
      text += format_double(point.value) + "," + (point.converged ? "1" : "0") + "," +
              std::to_string(point.iterations) + "," + format_double(point.gradient_norm) +
              join_values(x) + join_values(t) + "\n";
    }
  }
  emit(out, out.format == "json" ? dump(records) : text);
  return all_converged ? 0 : qldp::exit_code_for(ErrorCode::NonConvergence);
}

int run_clt(const ModelOptions& mo, const qldp::Tolerances& tol, const OutputOptions& out) {
  const auto fam = make_model(mo, tol);
  const auto moments = qldp::clt_moments(fam, mo.m, tol);
  const int k = fam.outcomes();
  const auto size = moments.mean.size();
  if (out.format == "json") {
    json cov = json::array();
    for (qldp::Index a = 0; a < size; ++a) cov.push_back(to_std(moments.covariance.row(a).transpose()));
    emit(out, dump(json{{"mean", to_std(moments.mean)},
                        {"covariance", cov},
                        {"meta", meta_json(fam, mo.m, tol)}}));
    return 0;
  }
  std::string text = "tuple,mean" + labels_header("cov_", k, mo.m) + "\n";
  for (qldp::Index a = 0; a < size; ++a) {
    text += qldp::tuple_label(static_cast<std::size_t>(a), k, mo.m) + "," +
            format_double(moments.mean(a)) + join_values(moments.covariance.row(a).transpose()) + "\n";
  }
  emit(out, text);
  return 0;
}

int run_simulate(const ModelOptions& mo, std::size_t n, std::size_t trials, int psi0,
                 std::uint64_t seed, std::size_t burn_in, const qldp::Tolerances& tol,
                 const OutputOptions& out) {
  const auto fam = make_model(mo, tol);
  const auto psi = qldp::PureState::basis(fam.dim(), psi0);
  std::vector<qldp::Trajectory> batch;
  batch.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    batch.push_back(qldp::sample_trajectory(fam, psi, n, qldp::derive_seed(seed, i), {burn_in}));
  }
  if (out.format == "json") {
    json records = json::array();
    for (const auto& traj : batch) {
      const auto measure = qldp::empirical_measure(traj.outcomes, mo.m, fam.outcomes());
      records.push_back(json{{"seed", traj.seed},
                             {"n", traj.outcomes.size()},
                             {"outcomes_rle", qldp::run_length_encode(traj.outcomes)},
                             {"frequencies", to_std(measure.frequencies)},
                             {"meta", meta_json(fam, mo.m, tol)}});
    }
    emit(out, dump(records));
    return 0;
  }
  std::ostringstream text;
  qldp::write_trajectory_csv(text, batch);
  emit(out, text.str());
  return 0;
}

int run_sweep_command(const std::string& path, const std::string& grid, const std::string& out_dir,
                      unsigned threads, const std::optional<qldp::Tolerances>& tol_override) {
  auto spec = qldp::load_sweep_spec(path);
  if (!grid.empty()) {
    spec.param_grid = parse_grid(grid);
    spec.default_grid = false;
  }
  if (tol_override) spec.tol = *tol_override;
  if (out_dir.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs --out <dir>");
  const auto summary = qldp::run_sweep(spec, out_dir, threads);
  std::cerr << summary.points << " points, " << summary.failed_cells
            << " (point, level) cells flagged\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large deviations of quantum Markov chain output statistics"};
  app.set_version_flag("--version", qldp::tool_version());
  app.require_subcommand(1);

  ModelOptions model;
  OutputOptions output;
  qldp::Tolerances tol;
  bool tol_given = false;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model.name, "Built-in model: example1 | example2")
        ->check(CLI::IsMember({"example1", "example2"}));
    sub->add_option("--model-file", model.file, "Model JSON file (overrides --model)");
    sub->add_option("--param", model.param, "Model parameter (delta or omega)");
    sub->add_option("--m", model.m, "Window length / level")->check(CLI::PositiveNumber);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", output.out, "Output file (default stdout)");
    sub->add_option("--format", output.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_tolerances = [&](CLI::App* sub) {
    const auto mark = [&](auto) { tol_given = true; };
    sub->add_option("--tol-norm", tol.norm_tol)->each(mark);
    sub->add_option("--tol-peripheral", tol.peripheral_tol)->each(mark);
    sub->add_option("--tol-stationary-rank", tol.stationary_rank_tol)->each(mark);
    sub->add_option("--tol-rank", tol.rank_tol)->each(mark);
    sub->add_option("--tol-power", tol.power_tol)->each(mark);
    sub->add_option("--tol-power-max-iter", tol.power_max_iter)->each(mark);
    sub->add_option("--tol-dense-limit", tol.dense_limit)->each(mark);
    sub->add_option("--tol-size-cap", tol.size_cap)->each(mark);
    sub->add_option("--tol-min-gap", tol.min_gap)->each(mark);
  };

  std::string check_path;
  bool require_primitive = false;
  auto* check = app.add_subcommand("check", "Validate a model file and report its spectrum");
  check->add_option("model", check_path, "Model JSON file")->required();
  check->add_flag("--require-primitive", require_primitive, "Exit 3 when not primitive");
  add_output(check);
  add_tolerances(check);

  auto* probs = app.add_subcommand("probs", "Stationary probabilities of length-m strings");
  add_model(probs);
  add_output(probs);
  add_tolerances(probs);

  std::vector<std::string> tilts;
  std::string grid;
  std::string tilt_dir;
  auto* scgf = app.add_subcommand("scgf", "Scaled cumulant generating function and gradient");
  add_model(scgf);
  scgf->add_option("--t", tilts, "Explicit tilt vector, comma separated (repeatable)");
  scgf->add_option("--grid", grid, "s values: start:stop:count or a list");
  scgf->add_option("--tilt-dir", tilt_dir, "Tilt direction u, comma separated");
  add_output(scgf);
  add_tolerances(scgf);

  std::vector<std::string> xs;
  auto* rate = app.add_subcommand("rate", "Rate function by numerical Legendre transform");
  add_model(rate);
  rate->add_option("--x", xs, "Point on the simplex, comma separated (repeatable)");
  rate->add_option("--grid", grid, "s values of dual points grad F(s u) when --x is absent");
  rate->add_option("--tilt-dir", tilt_dir, "Tilt direction u, comma separated");
  add_output(rate);
  add_tolerances(rate);

  auto* clt = app.add_subcommand("clt", "Central limit mean and covariance");
  add_model(clt);
  add_output(clt);
  add_tolerances(clt);

  std::size_t n = 1000;
  std::size_t trials = 1;
  int psi0 = 0;
  std::uint64_t seed = 42;
  std::size_t burn_in = 0;
  auto* simulate = app.add_subcommand("simulate", "Sample measurement trajectories");
  add_model(simulate);
  simulate->add_option("--n", n, "Trajectory length");
  simulate->add_option("--trials", trials, "Number of trajectories");
  simulate->add_option("--psi0", psi0, "Initial basis state");
  simulate->add_option("--seed", seed, "Base seed");
  simulate->add_option("--burn-in", burn_in, "Discarded initial steps");
  add_output(simulate);
  add_tolerances(simulate);

  std::string spec_path;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep from a JSON spec");
  sweep->add_option("spec", spec_path, "Sweep spec JSON")->required();
  sweep->add_option("--grid", grid, "Override the parameter grid");
  sweep->add_option("--out", output.out, "Output directory")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  add_tolerances(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) return run_check(check_path, require_primitive, tol, output);
    if (*probs) return run_probs(model, tol, output);
    if (*scgf) return run_scgf(model, tilts, grid, tilt_dir, tol, output);
    if (*rate) return run_rate(model, xs, grid, tilt_dir, tol, output);
    if (*clt) return run_clt(model, tol, output);
    if (*simulate) return run_simulate(model, n, trials, psi0, seed, burn_in, tol, output);
    if (*sweep) {
      return run_sweep_command(spec_path, grid, output.out, threads,
                               tol_given ? std::optional<qldp::Tolerances>(tol) : std::nullopt);
    }
  } catch (const Error& e) {
    std::cerr << "error [" << qldp::to_string(e.code()) << "]: " << e.what() << "\n";
    return qldp::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
