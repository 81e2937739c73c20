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
#include <utility>
#include <vector>

#include "qpsp/bits.hpp"
#include "qpsp/energy.hpp"
#include "qpsp/lattice.hpp"

namespace qpsp {

struct OracleOptions {
  int max_qubits = 30;
  std::int64_t node_limit = std::int64_t{1} << 36;
  double time_limit_s = 0.0;  // 0 = unbounded
  int threads = 0;            // 0 = hardware concurrency
};

struct OracleResult {
  int width = 0;
  double e_gs = 0.0;
  std::vector<Bits> argmin;  // ascending
  std::int64_t states_enumerated = 0;
  std::int64_t states_pruned = 0;
  double wall_time_s = 0.0;

  std::vector<std::string> argmin_bitstrings() const;
  std::string to_json() const;
  static OracleResult from_json(std::string_view text);
};

struct SpectrumEntry {
  double energy = 0.0;
  Bits bits = 0;
};

// Exact minimum over every encodable conformation by depth-first search
// over turns.  Branches die on the first bead collision or redundant turn.
// ResourceError when the width or node budget is exceeded.
OracleResult ground_state(std::string_view sequence, LatticeKind kind, const EnergyParams& params,
                          const OracleOptions& options = {});

// Scores every bitstring with total_energy; up to 20 qubits.
OracleResult naive_enumerate(std::string_view sequence, LatticeKind kind, const EnergyParams& params,
                             int max_qubits = 20);

// The top_m lowest valid conformations, ascending, ties by bitstring.
std::vector<SpectrumEntry> low_energy_spectrum(std::string_view sequence, LatticeKind kind,
                                               const EnergyParams& params, int top_m,
                                               const OracleOptions& options = {});

}  // namespace qpsp
