// Copyright 2026 The qpsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qpsp {

// Measured bitstrings are packed into an integer of a known width.  Qubit 0 is
// the leftmost character of the printed string and the most significant bit of
// the packed value, so printing the value in binary reproduces the string.
using Bits = std::uint64_t;

inline constexpr int kMaxPackedWidth = 64;

Bits parse_bits(std::string_view text);
std::string format_bits(Bits bits, int width);

// Value of qubit `q` in a packed bitstring of the given width.
constexpr int bit_at(Bits bits, int width, int q) {
  return static_cast<int>((bits >> (width - 1 - q)) & 1U);
}

}  // namespace qpsp
