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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qldp/error.hpp"
#include "qldp/sweep.hpp"

namespace qldp {
namespace {

using Rows = std::vector<std::vector<std::string>>;

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(QLDP_TEST_TMPDIR) / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Rows read_csv(const std::filesystem::path& path) {
  Rows rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::size_t column(const Rows& rows, const std::string& name) {
  for (std::size_t i = 0; i < rows.at(0).size(); ++i) {
    if (rows[0][i] == name) return i;
  }
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

TEST(SweepSpec, Defaults) {
  const auto spec = sweep_spec_from_json_text(R"({"model": "example2"})");
  EXPECT_TRUE(spec.default_grid);
  EXPECT_EQ(spec.param_grid.size(), 101u);
  EXPECT_EQ(spec.s_grid.size(), 21u);
  EXPECT_EQ(spec.mc.n, 5000u);
  EXPECT_EQ(spec.mc.trials, 1000u);
  EXPECT_EQ(spec.mc.seed, 42u);
  EXPECT_EQ(default_tilt_direction(2, 2), (RVector(4) << 1, -1, -1, 1).finished());
  EXPECT_EQ(default_tilt_direction(1, 3), (RVector(3) << 1, -1, 0).finished());
}

TEST(SweepSpec, Errors) {
  EXPECT_THROW(sweep_spec_from_json_text("{"), Error);
  EXPECT_THROW(sweep_spec_from_json_text(R"({"grid": [1]})"), Error);
  EXPECT_THROW(sweep_spec_from_json_text(R"({"model": "example9"})"), Error);
  EXPECT_THROW(sweep_spec_from_json_text(R"({"model": "example1", "grid": []})"), Error);
  EXPECT_THROW(sweep_spec_from_json_text(R"({"model": "example1", "tilt": {"1": [0, 0]}})"), Error);
  EXPECT_THROW(sweep_spec_from_json_text(R"({"model": "example1", "outputs": ["plots"]})"), Error);
}

TEST(RunSweep, ExampleTwoLevelOne) {
  const auto spec = sweep_spec_from_json_text(R"({
    "model": "example2", "grid": {"start": 0.2, "stop": 3.0, "count": 8},
    "m_levels": [1, 2], "s_grid": [-1.0, 0.0, 0.5],
    "outputs": ["spectrum", "probs", "scgf", "scgf_deriv", "rate", "clt"]})");
  const auto dir = scratch("sweep_example2");
  const auto summary = run_sweep(spec, dir, 2);
  EXPECT_EQ(summary.points, 8u);
  EXPECT_EQ(summary.failed_cells, 0u);

  const Rows scgf = read_csv(dir / "scgf.csv");
  const auto m_col = column(scgf, "m"), s_col = column(scgf, "s"), f_col = column(scgf, "F"),
             d_col = column(scgf, "dF_ds"), st_col = column(scgf, "status");
  double reference_at_half = std::nan("");
  for (std::size_t r = 1; r < scgf.size(); ++r) {
    ASSERT_EQ(scgf[r].size(), scgf[0].size());
    EXPECT_EQ(scgf[r][st_col], "ok");
    if (scgf[r][m_col] != "1") continue;
    const double s = std::stod(scgf[r][s_col]);
    if (s == 0.0) EXPECT_NEAR(std::stod(scgf[r][d_col]), 0.0, 1e-10);
    if (s == 0.5) {
      const double f = std::stod(scgf[r][f_col]);
      if (std::isnan(reference_at_half)) reference_at_half = f;
      EXPECT_NEAR(f, reference_at_half, 1e-10);
    }
  }
  EXPECT_FALSE(std::isnan(reference_at_half));

  const Rows rate = read_csv(dir / "rate.csv");
  const auto rate_col = column(rate, "rate"), leg_col = column(rate, "legendre");
  for (std::size_t r = 1; r < rate.size(); ++r) {
    EXPECT_NEAR(std::stod(rate[r][rate_col]), std::stod(rate[r][leg_col]), 1e-6);
  }

  const std::string manifest = slurp(dir / "manifest.json");
  EXPECT_NE(manifest.find("\"model_hash\""), std::string::npos);
  EXPECT_NE(manifest.find("\"tolerances\""), std::string::npos);
  EXPECT_NE(manifest.find("\"version\""), std::string::npos);
}

TEST(RunSweep, NonPrimitiveEndpointsAreFlagged) {
  const auto spec = sweep_spec_from_json_text(R"({
    "model": "example1", "grid": [0.0, 0.5, 1.0], "m_levels": [1],
    "s_grid": [0.0], "outputs": ["spectrum", "scgf", "probs"]})");
  const auto dir = scratch("sweep_example1");
  const auto summary = run_sweep(spec, dir, 1);
  EXPECT_EQ(summary.failed_cells, 2u);

  const Rows spectrum = read_csv(dir / "spectrum.csv");
  EXPECT_EQ(spectrum.size(), 1u + 3 * 4);
  for (std::size_t r = 1; r < spectrum.size(); ++r) EXPECT_EQ(spectrum[r].back(), "ok");

  const Rows scgf = read_csv(dir / "scgf.csv");
  ASSERT_EQ(scgf.size(), 4u);
  EXPECT_EQ(scgf[1].back(), "NotPrimitive");
  EXPECT_EQ(scgf[2].back(), "ok");
  EXPECT_EQ(scgf[3].back(), "NotPrimitive");
}

TEST(RunSweep, DefaultGridOffsetsEndpoints) {
  auto spec = sweep_spec_from_json_text(R"({"model": "example1", "m_levels": [1],
    "s_grid": [0.0], "outputs": ["scgf"]})");
  spec.param_grid = {spec.param_grid.front(), spec.param_grid.back()};
  const auto dir = scratch("sweep_default");
  const auto summary = run_sweep(spec, dir);
  EXPECT_EQ(summary.failed_cells, 0u);
  const Rows scgf = read_csv(dir / "scgf.csv");
  const auto ldp_col = column(scgf, "ldp_param");
  EXPECT_NEAR(std::stod(scgf[1][ldp_col]), 1e-3, 1e-15);
  EXPECT_NEAR(std::stod(scgf[2][ldp_col]), 1.0 - 1e-3, 1e-15);
}

TEST(RunSweep, ByteIdenticalAcrossRunsAndThreads) {
  const auto spec = sweep_spec_from_json_text(R"({
    "model": "example2", "grid": {"start": 0.5, "stop": 2.5, "count": 4},
    "m_levels": [1, 2], "s_grid": [-0.5, 0.5],
    "outputs": ["spectrum", "scgf", "scgf_deriv", "clt", "mc"],
    "mc": {"n": 200, "trials": 100, "seed": 7}})");
  const auto a = scratch("sweep_det_a");
  const auto b = scratch("sweep_det_b");
  run_sweep(spec, a, 1);
  run_sweep(spec, b, 3);
  for (const auto* name : {"spectrum.csv", "scgf.csv", "clt.csv", "mc.csv", "manifest.json"}) {
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

}  // namespace
}  // namespace qldp
