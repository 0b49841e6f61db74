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


#include "qldp/tuples.hpp"

#include "qldp/error.hpp"

namespace qldp {

std::size_t checked_power(int k, int e, std::size_t cap) {
  if (k < 1 || e < 0) throw Error(ErrorCode::InvalidArgument, "bad power arguments");
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > cap / static_cast<std::size_t>(k)) {
      throw Error(ErrorCode::SizeCapExceeded,
                  std::to_string(k) + "^" + std::to_string(e) + " exceeds size cap " +
                      std::to_string(cap));
    }
    out *= static_cast<std::size_t>(k);
  }
  if (out > cap) {
    throw Error(ErrorCode::SizeCapExceeded, "tuple count exceeds size cap");
  }
  return out;
}

std::vector<int> tuple_digits(std::size_t index, int k, int m) {
  std::vector<int> digits(static_cast<std::size_t>(m));
  for (int j = m - 1; j >= 0; --j) {
    digits[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(k));
    index /= static_cast<std::size_t>(k);
  }
  return digits;
}

std::size_t tuple_index(const std::vector<int>& digits, int k) {
  std::size_t index = 0;
  for (int i : digits) index = index * static_cast<std::size_t>(k) + static_cast<std::size_t>(i);
  return index;
}

std::string tuple_label(std::size_t index, int k, int m) {
  std::string out;
  const auto digits = tuple_digits(index, k, m);
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (k > 10 && j > 0) out += '_';
    out += std::to_string(digits[j]);
  }
  return out;
}

}  // namespace qldp
