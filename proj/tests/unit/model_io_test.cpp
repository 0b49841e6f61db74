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


#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "qldp/error.hpp"
#include "qldp/model_io.hpp"
#include "qldp/models.hpp"
#include "test_models.hpp"

namespace qldp {
namespace {

std::filesystem::path scratch(const std::string& name) {
  const std::filesystem::path dir = QLDP_TEST_TMPDIR;
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(ModelIo, RoundTripIsBitwise) {
  const auto fam = example2(std::numbers::pi / 3);
  const auto path = scratch("example2.json");
  save_model(fam, path);
  const auto loaded = load_model(path);
  ASSERT_EQ(loaded.outcomes(), 2);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(loaded[i], fam[i]);
  EXPECT_EQ(model_hash(loaded), model_hash(fam));

  Rng rng(6);
  const auto random = random_kraus(3, 3, rng);
  const auto back = model_from_json_text(model_to_json_text(random));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(back[i], random[i]);
}

TEST(ModelIo, MalformedJsonReportsPosition) {
  try {
    model_from_json_text("{\"d\": 2,\n \"k\": 2,\n \"kraus\": [}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
}

TEST(ModelIo, SchemaErrors) {
  EXPECT_THROW(model_from_json_text("[]"), Error);
  EXPECT_THROW(model_from_json_text("{\"d\": 2, \"k\": 2}"), Error);
  EXPECT_THROW(model_from_json_text("{\"d\": 1, \"k\": 2, \"kraus\": [[[[1,0]]]]}"), Error);
  EXPECT_THROW(model_from_json_text("{\"d\": 1, \"k\": 2, \"kraus\": [[[[1]]], [[[0,0]]]]}"), Error);
}

TEST(ModelIo, NormalizationViolationNamesResidual) {
  const std::string text =
      "{\"d\": 1, \"k\": 2, \"kraus\": [[[[1.0, 0.0]]], [[[1.0, 0.0]]]]}";
  try {
    model_from_json_text(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NormalizationViolation);
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos) << e.what();
  }
}

TEST(ModelIo, MissingFile) {
  try {
    load_model(scratch("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(ModelHash, DistinguishesModels) {
  EXPECT_NE(model_hash(example1(0.5)), model_hash(example1(0.5000001)));
  EXPECT_EQ(model_hash(example1(0.5)).size(), 16u);
}

}  // namespace
}  // namespace qldp
