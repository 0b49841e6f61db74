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


#include "qldp/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qldp/channel.hpp"
#include "qldp/error.hpp"
#include "qldp/format.hpp"
#include "qldp/model_io.hpp"
#include "qldp/models.hpp"
#include "qldp/parallel.hpp"
#include "qldp/trajectory.hpp"
#include "qldp/tuples.hpp"

#ifndef QLDP_VERSION
#define QLDP_VERSION "unknown"
#endif

namespace qldp {

using nlohmann::json;

std::string tool_version() { return QLDP_VERSION; }

namespace {

constexpr double kEndpointOffset = 1e-3;

const std::set<std::string>& known_outputs() {
  static const std::set<std::string> names{"spectrum", "probs", "scgf", "scgf_deriv",
                                           "rate",     "clt",   "mc"};
  return names;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? start
                        : start + (stop - start) * static_cast<double>(i) /
                                      static_cast<double>(count - 1);
  }
  return out;
}

[[noreturn]] void spec_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, "sweep spec: " + what);
}

std::vector<double> parse_grid(const json& node, const char* name) {
  if (node.is_array()) {
    std::vector<double> out;
    for (const auto& v : node) {
      if (!v.is_number()) spec_error(std::string(name) + " entries must be numbers");
      out.push_back(v.get<double>());
    }
    if (out.empty()) spec_error(std::string(name) + " must be nonempty");
    return out;
  }
  if (node.is_object()) {
    if (!node.contains("start") || !node.contains("stop") || !node.contains("count")) {
      spec_error(std::string(name) + " needs start, stop and count");
    }
    const auto count = node["count"].get<long long>();
    if (count < 1) spec_error(std::string(name) + " count must be >= 1");
    return linspace(node["start"].get<double>(), node["stop"].get<double>(),
                    static_cast<std::size_t>(count));
  }
  spec_error(std::string(name) + " must be a list or {start, stop, count}");
}

void parse_tolerances(const json& node, Tolerances& tol) {
  if (!node.is_object()) spec_error("tolerances must be an object");
  for (const auto& [key, value] : node.items()) {
    if (key == "norm_tol") tol.norm_tol = value.get<double>();
    else if (key == "peripheral_tol") tol.peripheral_tol = value.get<double>();
    else if (key == "stationary_rank_tol") tol.stationary_rank_tol = value.get<double>();
    else if (key == "rank_tol") tol.rank_tol = value.get<double>();
    else if (key == "power_tol") tol.power_tol = value.get<double>();
    else if (key == "power_max_iter") tol.power_max_iter = value.get<std::size_t>();
    else if (key == "dense_limit") tol.dense_limit = value.get<std::size_t>();
    else if (key == "size_cap") tol.size_cap = value.get<std::size_t>();
    else if (key == "min_gap") tol.min_gap = value.get<double>();
    else spec_error("unknown tolerance '" + key + "'");
  }
}

json tolerances_json(const Tolerances& tol) {
  return json{{"norm_tol", tol.norm_tol},
              {"peripheral_tol", tol.peripheral_tol},
              {"stationary_rank_tol", tol.stationary_rank_tol},
              {"rank_tol", tol.rank_tol},
              {"power_tol", tol.power_tol},
              {"power_max_iter", tol.power_max_iter},
              {"dense_limit", tol.dense_limit},
              {"size_cap", tol.size_cap},
              {"min_gap", tol.min_gap}};
}

}  // namespace

RVector default_tilt_direction(int m, int k) {
  if (m < 1 || k < 2) throw Error(ErrorCode::InvalidArgument, "need m >= 1 and k >= 2");
  RVector base = RVector::Zero(k);
  base(0) = 1.0;
  base(1) = -1.0;
  RVector u = base;
  for (int level = 1; level < m; ++level) {
    RVector next(u.size() * k);
    for (Index i = 0; i < u.size(); ++i) next.segment(i * k, k) = u(i) * base;
    u = std::move(next);
  }
  return u;
}

std::vector<double> default_param_grid(const std::string& model_name) {
  const auto [lo, hi] = example_param_range(model_name);
  return linspace(lo, hi, 101);
}

std::vector<double> default_s_grid() { return linspace(-1.0, 1.0, 21); }

SweepSpec sweep_spec_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    spec_error(e.what());
  }
  if (!doc.is_object()) spec_error("top level must be an object");
  SweepSpec spec;
  try {
    if (!doc.contains("model")) spec_error("missing field 'model'");
    spec.model_name = doc["model"].get<std::string>();
    if (spec.model_name == "file") {
      if (!doc.contains("model_file")) spec_error("model 'file' needs 'model_file'");
      spec.model_file = doc["model_file"].get<std::string>();
      spec.param_grid = {std::nan("")};
    } else {
      example_param_range(spec.model_name);  // UnknownModel
      if (doc.contains("grid")) {
        spec.param_grid = parse_grid(doc["grid"], "grid");
      } else {
        spec.param_grid = default_param_grid(spec.model_name);
        spec.default_grid = true;
      }
    }
    if (doc.contains("m_levels")) {
      spec.m_levels = doc["m_levels"].get<std::vector<int>>();
      if (spec.m_levels.empty()) spec_error("m_levels must be nonempty");
      for (int m : spec.m_levels) {
        if (m < 1) spec_error("m_levels entries must be >= 1");
      }
    }
    if (doc.contains("tilt")) {
      if (!doc["tilt"].is_object()) spec_error("tilt must map levels to directions");
      for (const auto& [key, value] : doc["tilt"].items()) {
        const auto entries = value.get<std::vector<double>>();
        RVector u = Eigen::Map<const RVector>(entries.data(), static_cast<Index>(entries.size()));
        if (u.size() == 0 || u.cwiseAbs().maxCoeff() == 0.0) spec_error("tilt direction must be nonzero");
        spec.tilt_directions[std::stoi(key)] = u;
      }
    }
    spec.s_grid = doc.contains("s_grid") ? parse_grid(doc["s_grid"], "s_grid") : default_s_grid();
    if (doc.contains("outputs")) {
      spec.outputs.clear();
      for (const auto& name : doc["outputs"].get<std::vector<std::string>>()) {
        if (!known_outputs().contains(name)) spec_error("unknown output '" + name + "'");
        spec.outputs.insert(name);
      }
      if (spec.outputs.empty()) spec_error("outputs must be nonempty");
    }
    if (doc.contains("mc")) {
      const auto& mc = doc["mc"];
      if (mc.contains("n")) spec.mc.n = mc["n"].get<std::size_t>();
      if (mc.contains("trials")) spec.mc.trials = mc["trials"].get<std::size_t>();
      if (mc.contains("psi0")) spec.mc.psi0 = mc["psi0"].get<int>();
      if (mc.contains("seed")) spec.mc.seed = mc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("tolerances")) parse_tolerances(doc["tolerances"], spec.tol);
  } catch (const json::exception& e) {
    spec_error(e.what());
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sweep_spec_from_json_text(buffer.str());
}

namespace {

struct Table {
  std::string name;
  std::string header;
};

struct PointResult {
  double param = 0.0;
  double ldp_param = 0.0;
  std::string model_hash;
  std::map<int, std::string> level_status;
  std::map<std::string, std::vector<std::string>> rows;
};

std::string status_of(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->code()));
  return "InternalError";
}

std::string join(std::initializer_list<std::string> fields) {
  std::string out;
  for (const auto& f : fields) {
    if (!out.empty()) out += ',';
    out += f;
  }
  return out;
}

class PointRunner {
 public:
  PointRunner(const SweepSpec& spec, std::size_t id, const std::optional<KrausFamily>& file_model)
      : spec_(spec), id_(id), file_model_(file_model) {}

  PointResult run() {
    const double param = spec_.param_grid[id_];
    result_.param = param;
    result_.ldp_param = ldp_param(param);
    prefix_ = std::to_string(id_) + "," + format_double(param);
    ldp_prefix_ = prefix_ + "," + format_double(result_.ldp_param);

    if (wants("spectrum")) spectrum_rows(param);

    std::optional<KrausFamily> fam;
    try {
      fam = model(result_.ldp_param);
      result_.model_hash = model_hash(*fam);
    } catch (const std::exception& e) {
      for (int m : spec_.m_levels) fail_level(m, status_of(e));
      return std::move(result_);
    }
    for (int m : spec_.m_levels) level_rows(*fam, m);
    return std::move(result_);
  }

 private:
  bool wants(const char* name) const { return spec_.outputs.contains(name); }

  double ldp_param(double param) const {
    if (!spec_.default_grid) return param;
    const auto [lo, hi] = example_param_range(spec_.model_name);
    if (param <= lo) return lo + kEndpointOffset;
    if (param >= hi) return hi - kEndpointOffset;
    return param;
  }

  KrausFamily model(double param) const {
    if (file_model_) return *file_model_;
    KrausFamily fam = example_model(spec_.model_name, param);
    require_normalized(fam, spec_.tol.norm_tol);
    return fam;
  }

  void add(const std::string& table, std::string row) { result_.rows[table].push_back(std::move(row)); }

  void spectrum_rows(double param) {
    try {
      const auto report = spectrum_report(model(param), spec_.tol);
      for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        const Complex z = report.eigenvalues[i];
        add("spectrum", join({prefix_, std::to_string(i), format_double(z.real()),
                              format_double(z.imag()), format_double(std::abs(z)),
                              report.is_primitive ? "1" : "0", "ok"}));
      }
    } catch (const std::exception& e) {
      add("spectrum", join({prefix_, "", "nan", "nan", "nan", "", status_of(e)}));
    }
  }

  RVector direction(int m, int k) const {
    const auto it = spec_.tilt_directions.find(m);
    RVector u = it != spec_.tilt_directions.end() ? it->second : default_tilt_direction(m, k);
    const std::size_t size = checked_power(k, m, spec_.tol.size_cap);
    if (static_cast<std::size_t>(u.size()) != size) {
      throw Error(ErrorCode::DimensionMismatch,
                  "tilt direction for level " + std::to_string(m) + " needs " +
                      std::to_string(size) + " entries");
    }
    return u;
  }

  void fail_level(int m, const std::string& status) {
    result_.level_status[m] = status;
    const std::string head = ldp_prefix_ + "," + std::to_string(m);
    if (wants("probs")) add("probs", join({head, "", "nan", status}));
    if (wants("scgf") || wants("scgf_deriv")) {
      for (double s : spec_.s_grid) {
        std::string row = head + "," + format_double(s);
        if (wants("scgf")) row += ",nan";
        if (wants("scgf_deriv")) row += ",nan,nan";
        add("scgf", row + "," + status);
      }
    }
    if (wants("rate")) add("rate", join({head, "nan", "nan", "nan", "nan", "", "", status}));
    if (wants("clt")) add("clt", join({head, "", "", "nan", "nan", status}));
    if (wants("mc")) add("mc", join({head, "", "nan", "nan", "nan", "nan", status}));
  }

  void level_rows(const KrausFamily& fam, int m) {
    const int k = fam.outcomes();
    const std::string head = ldp_prefix_ + "," + std::to_string(m);
    std::optional<TiltedSpectrum> spectrum;
    RVector u;
    try {
      spectrum.emplace(fam, m, spec_.tol);
      u = direction(m, k);
    } catch (const std::exception& e) {
      fail_level(m, status_of(e));
      return;
    }
    result_.level_status[m] = "ok";
    auto note = [&](const std::exception& e) {
      if (result_.level_status[m] == "ok") result_.level_status[m] = status_of(e);
      return status_of(e);
    };

    if (wants("probs")) {
      try {
        const RVector p = stationary_string_probabilities(fam, m, spec_.tol);
        for (Index j = 0; j < p.size(); ++j) {
          add("probs", join({head, tuple_label(static_cast<std::size_t>(j), k, m),
                             format_double(p(j)), "ok"}));
        }
      } catch (const std::exception& e) {
        add("probs", join({head, "", "nan", note(e)}));
      }
    }

    if (wants("scgf") || wants("scgf_deriv") || wants("rate")) {
      for (double s : spec_.s_grid) {
        const RVector t = s * u;
        std::string row = head + "," + format_double(s);
        try {
          const auto ev = spectrum->evaluate(t);
          if (wants("scgf")) row += "," + format_double(ev.value);
          if (wants("scgf_deriv")) {
            row += "," + format_double(u.dot(ev.gradient)) + "," + format_double(ev.gap);
          }
          row += ",ok";
          if (wants("rate")) rate_row(*spectrum, head, s, u, ev);
        } catch (const std::exception& e) {
          if (wants("scgf")) row += ",nan";
          if (wants("scgf_deriv")) row += ",nan,nan";
          row += "," + note(e);
          if (wants("rate")) {
            add("rate", join({head, format_double(s), "nan", "nan", "nan", "", "", status_of(e)}));
          }
        }
        if (wants("scgf") || wants("scgf_deriv")) add("scgf", row);
      }
    }

    if (wants("clt")) {
      try {
        const auto moments = clt_moments(*spectrum);
        const Index size = moments.mean.size();
        for (Index a = 0; a < size; ++a) {
          for (Index b = 0; b < size; ++b) {
            add("clt", join({head, tuple_label(static_cast<std::size_t>(a), k, m),
                             tuple_label(static_cast<std::size_t>(b), k, m),
                             format_double(moments.mean(a)), format_double(moments.covariance(a, b)),
                             "ok"}));
          }
        }
      } catch (const std::exception& e) {
        add("clt", join({head, "", "", "nan", "nan", note(e)}));
      }
    }

    if (wants("mc")) {
      try {
        const std::uint64_t seed = derive_seed(derive_seed(spec_.mc.seed, id_),
                                               static_cast<std::uint64_t>(m));
        const auto mc = monte_carlo_clt(fam, PureState::basis(fam.dim(), spec_.mc.psi0),
                                        spec_.mc.n, spec_.mc.trials, m, seed, spec_.tol);
        for (Index j = 0; j < mc.sample_mean.size(); ++j) {
          add("mc", join({head, tuple_label(static_cast<std::size_t>(j), k, m),
                          format_double(mc.analytic.mean(j)), format_double(mc.sample_mean(j)),
                          format_double(mc.z_scores(j)), format_double(mc.relative_frobenius),
                          "ok"}));
        }
      } catch (const std::exception& e) {
        add("mc", join({head, "", "nan", "nan", "nan", "nan", note(e)}));
      }
    }
  }

  // x = grad F(s u) is the maximizer's dual point, so I(x) = s <u, x> - F(s u)
  // exactly; the numerical Legendre transform is reported next to it.
  void rate_row(const TiltedSpectrum& spectrum, const std::string& head, double s,
                const RVector& u, const TiltedSpectrum::Evaluation& ev) {
    const RVector& x = ev.gradient;
    const double legendre = s * u.dot(x) - ev.value;
    try {
      const auto point = rate_function(spectrum, x);
      add("rate", join({head, format_double(s), format_double(u.dot(x)), format_double(point.value),
                        format_double(legendre), point.converged ? "1" : "0",
                        std::to_string(point.iterations), "ok"}));
    } catch (const std::exception& e) {
      add("rate", join({head, format_double(s), format_double(u.dot(x)), "nan",
                        format_double(legendre), "", "", status_of(e)}));
    }
  }

  const SweepSpec& spec_;
  std::size_t id_;
  const std::optional<KrausFamily>& file_model_;
  PointResult result_;
  std::string prefix_;
  std::string ldp_prefix_;
};

std::vector<Table> tables_for(const SweepSpec& spec) {
  const auto wants = [&](const char* name) { return spec.outputs.contains(name); };
  std::vector<Table> tables;
  if (wants("spectrum")) {
    tables.push_back({"spectrum", "point_id,param,index,re,im,abs,is_primitive,status"});
  }
  const std::string ldp = "point_id,param,ldp_param,m";
  if (wants("probs")) tables.push_back({"probs", ldp + ",tuple,p,status"});
  if (wants("scgf") || wants("scgf_deriv")) {
    std::string header = ldp + ",s";
    if (wants("scgf")) header += ",F";
    if (wants("scgf_deriv")) header += ",dF_ds,gap";
    tables.push_back({"scgf", header + ",status"});
  }
  if (wants("rate")) {
    tables.push_back({"rate", ldp + ",s,u_dot_x,rate,legendre,converged,iterations,status"});
  }
  if (wants("clt")) tables.push_back({"clt", ldp + ",row,col,mean_row,covariance,status"});
  if (wants("mc")) {
    tables.push_back({"mc", ldp + ",tuple,p,sample_mean,z_score,relative_frobenius,status"});
  }
  return tables;
}

}  // namespace

SweepSummary run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                       unsigned max_threads) {
  if (spec.param_grid.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  if (spec.m_levels.empty()) throw Error(ErrorCode::InvalidArgument, "no levels requested");
  std::optional<KrausFamily> file_model;
  if (spec.model_name == "file") file_model = load_model(spec.model_file, spec.tol.norm_tol);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string());

  std::vector<PointResult> results(spec.param_grid.size());
  parallel_for(
      results.size(),
      [&](std::size_t i) { results[i] = PointRunner(spec, i, file_model).run(); },
      max_threads);

  SweepSummary summary;
  summary.points = results.size();
  for (const auto& table : tables_for(spec)) {
    const auto path = out_dir / (table.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << table.header << '\n';
    for (const auto& r : results) {
      const auto it = r.rows.find(table.name);
      if (it == r.rows.end()) continue;
      for (const auto& row : it->second) out << row << '\n';
    }
    summary.files.push_back(path);
  }

  json points = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    json levels = json::object();
    for (const auto& [m, status] : results[i].level_status) {
      levels[std::to_string(m)] = status;
      if (status != "ok") ++summary.failed_cells;
    }
    points.push_back({{"point_id", i},
                      {"param", results[i].param},
                      {"ldp_param", results[i].ldp_param},
                      {"model_hash", results[i].model_hash},
                      {"levels", levels}});
  }
  json tilts = json::object();
  for (int m : spec.m_levels) {
    const auto it = spec.tilt_directions.find(m);
    const int k = file_model ? file_model->outcomes() : 2;
    const RVector u = it != spec.tilt_directions.end() ? it->second : default_tilt_direction(m, k);
    tilts[std::to_string(m)] = std::vector<double>(u.data(), u.data() + u.size());
  }
  json files = json::array();
  for (const auto& f : summary.files) files.push_back(f.filename().string());
  json manifest{
      {"tool", "qldp"},
      {"version", tool_version()},
      {"model", spec.model_name},
      {"model_file", spec.model_file},
      {"default_grid", spec.default_grid},
      {"endpoint_offset", spec.default_grid ? kEndpointOffset : 0.0},
      {"m_levels", spec.m_levels},
      {"tilt_directions", tilts},
      {"s_grid", spec.s_grid},
      {"outputs", spec.outputs},
      {"mc", {{"n", spec.mc.n}, {"trials", spec.mc.trials}, {"psi0", spec.mc.psi0},
              {"base_seed", spec.mc.seed}, {"seed_rule", "derive_seed(derive_seed(base, point_id), m)"}}},
      {"tolerances", tolerances_json(spec.tol)},
      {"files", files},
      {"points", points}};
  const auto manifest_path = out_dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + manifest_path.string());
  out << manifest.dump(2) << '\n';
  summary.files.push_back(manifest_path);
  return summary;
}

}  // namespace qldp
