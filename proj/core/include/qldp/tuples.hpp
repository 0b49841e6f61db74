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

#include <cstddef>
#include <string>
#include <vector>

namespace qldp {

/// k^e, throwing SizeCapExceeded when it exceeds cap.
std::size_t checked_power(int k, int e, std::size_t cap);

/// Digits (i_1, ..., i_m) of a big-endian mixed-radix index.
std::vector<int> tuple_digits(std::size_t index, int k, int m);

std::size_t tuple_index(const std::vector<int>& digits, int k);

/// Label such as "011"; digits are joined with "_" when k > 10.
std::string tuple_label(std::size_t index, int k, int m);

}  // namespace qldp
