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

#include <filesystem>
#include <string>

#include "qldp/kraus.hpp"

namespace qldp {

/// Model files are JSON objects
///   {"d": int, "k": int, "kraus": [ k matrices, row-major, entries [re, im] ]}.
/// Doubles are written in shortest round-trip form, so save/load is exact.
std::string model_to_json_text(const KrausFamily& fam);

/// ParseError (with line and column) on malformed input or schema
/// mismatch; NormalizationViolation when sum V^dagger V deviates from 1.
KrausFamily model_from_json_text(const std::string& text, double norm_tol = 1e-10);

KrausFamily load_model(const std::filesystem::path& path, double norm_tol = 1e-10);
void save_model(const KrausFamily& fam, const std::filesystem::path& path);

/// FNV-1a digest over d, k and the IEEE bit patterns of all entries, as 16
/// hex digits.
std::string model_hash(const KrausFamily& fam);

}  // namespace qldp
