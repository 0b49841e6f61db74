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


#include "qldp/model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qldp/error.hpp"

namespace qldp {

using nlohmann::json;

std::string model_to_json_text(const KrausFamily& fam) {
  json doc;
  doc["d"] = fam.dim();
  doc["k"] = fam.outcomes();
  json kraus = json::array();
  for (const auto& v : fam.operators()) {
    json rows = json::array();
    for (Index r = 0; r < v.rows(); ++r) {
      json row = json::array();
      for (Index c = 0; c < v.cols(); ++c) row.push_back({v(r, c).real(), v(r, c).imag()});
      rows.push_back(std::move(row));
    }
    kraus.push_back(std::move(rows));
  }
  doc["kraus"] = std::move(kraus);
  return doc.dump(2) + "\n";
}

namespace {

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, "model file: " + what);
}

}  // namespace

KrausFamily model_from_json_text(const std::string& text, double norm_tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte points one past the offending character
    throw Error(ErrorCode::ParseError,
                position(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  for (const char* key : {"d", "k", "kraus"}) {
    if (!doc.contains(key)) schema_error(std::string("missing field '") + key + "'");
  }
  if (!doc["d"].is_number_integer() || !doc["k"].is_number_integer()) {
    schema_error("'d' and 'k' must be integers");
  }
  const int d = doc["d"].get<int>();
  const int k = doc["k"].get<int>();
  if (d < 1 || k < 2) schema_error("need d >= 1 and k >= 2");
  const auto& kraus = doc["kraus"];
  if (!kraus.is_array() || static_cast<int>(kraus.size()) != k) {
    schema_error("'kraus' must be an array of k matrices");
  }
  std::vector<CMatrix> ops;
  for (const auto& mat : kraus) {
    if (!mat.is_array() || static_cast<int>(mat.size()) != d) schema_error("matrix must have d rows");
    CMatrix v(d, d);
    for (int r = 0; r < d; ++r) {
      const auto& row = mat[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != d) schema_error("row must have d entries");
      for (int c = 0; c < d; ++c) {
        const auto& entry = row[static_cast<std::size_t>(c)];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
          schema_error("entries must be [re, im] number pairs");
        }
        v(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    ops.push_back(std::move(v));
  }
  KrausFamily fam(std::move(ops));
  require_normalized(fam, norm_tol);
  return fam;
}

KrausFamily load_model(const std::filesystem::path& path, double norm_tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json_text(buffer.str(), norm_tol);
}

void save_model(const KrausFamily& fam, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << model_to_json_text(fam);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string model_hash(const KrausFamily& fam) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xFFU;
      h *= 0x100000001B3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(fam.dim()));
  mix(static_cast<std::uint64_t>(fam.outcomes()));
  for (const auto& v : fam.operators()) {
    for (Index c = 0; c < v.cols(); ++c) {
      for (Index r = 0; r < v.rows(); ++r) {
        mix(std::bit_cast<std::uint64_t>(v(r, c).real()));
        mix(std::bit_cast<std::uint64_t>(v(r, c).imag()));
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qldp
