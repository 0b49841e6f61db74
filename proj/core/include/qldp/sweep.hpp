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
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qldp/kraus.hpp"
#include "qldp/ldp.hpp"
#include "qldp/tolerances.hpp"

namespace qldp {

/// Monte Carlo settings used by the "mc" output.
struct SweepMcSettings {
  std::size_t n = 5000;
  std::size_t trials = 1000;
  int psi0 = 0;  // basis state index
  std::uint64_t seed = 42;
};

/// A parameter sweep over a built-in model (or a single model file).
///
/// JSON form:
///   {"model": "example1" | "example2" | "file", "model_file": "...",
///    "grid": [..] | {"start": a, "stop": b, "count": n},
///    "m_levels": [1, 2], "tilt": {"1": [1, -1], "2": [1, -1, -1, 1]},
///    "s_grid": [..] | {...}, "outputs": ["spectrum", "probs", ...],
///    "mc": {"n": .., "trials": .., "psi0": .., "seed": ..},
///    "tolerances": {"norm_tol": .., ...}}
/// Every field except "model" has a default.
struct SweepSpec {
  std::string model_name = "example1";
  std::string model_file;
  std::vector<double> param_grid;
  /// True for the built-in 101-point grid: LDP columns at the two endpoints
  /// are then evaluated 1e-3 inside the range.
  bool default_grid = false;
  std::vector<int> m_levels{1, 2};
  std::map<int, RVector> tilt_directions;  // level -> u; missing levels use defaults
  std::vector<double> s_grid;
  std::set<std::string> outputs{"spectrum", "probs", "scgf", "scgf_deriv", "clt"};
  SweepMcSettings mc;
  Tolerances tol;
};

/// Tilt direction used when none is given: the m-fold tensor power of
/// (1, -1, 0, .., 0), which is (1,-1) and (1,-1,-1,1) for two outcomes.
RVector default_tilt_direction(int m, int k);

/// 101 uniform points over the model's parameter range.
std::vector<double> default_param_grid(const std::string& model_name);

/// 21 uniform points over [-1, 1].
std::vector<double> default_s_grid();

/// Parses and validates a spec (ParseError / InvalidArgument).
SweepSpec sweep_spec_from_json_text(const std::string& text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepSummary {
  std::size_t points = 0;
  std::size_t failed_cells = 0;  // (point, level) pairs whose LDP columns failed
  std::vector<std::filesystem::path> files;
};

/// Evaluates every grid point in parallel and writes one CSV per output
/// plus manifest.json into out_dir. Failures are recorded in the status
/// column of the affected rows and do not stop the sweep. Output is written
/// in grid order and contains no timestamps, so reruns are byte-identical.
/// Library version string baked in at build time.
std::string tool_version();

SweepSummary run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                       unsigned max_threads = 0);

}  // namespace qldp
