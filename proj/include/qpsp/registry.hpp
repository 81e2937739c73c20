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

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "qpsp/lattice.hpp"

namespace qpsp {

// One benchmark peptide with its published per-lattice qubit counts
// (0 where the lattice is not studied for it).
struct ProteinInstance {
  std::string_view pdb_id;
  std::string_view sequence;
  std::array<int, 3> qubits;  // tetra, bcc, fcc

  int n() const { return static_cast<int>(sequence.size()); }
  bool supports(LatticeKind kind) const { return qubits[static_cast<std::size_t>(kind)] > 0; }
  int listed_qubits(LatticeKind kind) const { return qubits[static_cast<std::size_t>(kind)]; }
};

std::span<const ProteinInstance> instances();
std::optional<ProteinInstance> find_instance(std::string_view pdb_id);

}  // namespace qpsp
