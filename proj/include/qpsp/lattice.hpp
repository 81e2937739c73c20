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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpsp/bits.hpp"

namespace qpsp {

enum class LatticeKind : std::uint8_t { kTetra, kBcc, kFcc };

std::string_view lattice_name(LatticeKind kind);
// Accepts "tetra", "bcc", "fcc" (case-insensitive); throws DomainError.
LatticeKind parse_lattice(std::string_view name);

struct Vec3 {
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr int norm2() const { return x * x + y * y + z * z; }
  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr bool operator==(Vec3 a, Vec3 b) = default;
};

inline constexpr int kRedundantLabel = -1;

// One row of a turn-encoding table.
struct TurnEntry {
  int label;
  unsigned pattern;  // most-significant bit first, as printed
  Vec3 step;
};

// Geometry and encoding of one lattice.  Instances are immutable singletons
// obtained through lattice().
class LatticeSpec {
 public:
  LatticeKind kind() const { return kind_; }
  int qubits_per_turn() const { return qubits_per_turn_; }
  int coordination() const { return static_cast<int>(tables_[0].size()); }
  int sublattice_count() const { return kind_ == LatticeKind::kTetra ? 2 : 1; }

  // Table used by the turn leaving bead `turn_index`; the tetrahedral lattice
  // alternates A (even) and B (odd).
  std::span<const TurnEntry> table_for_turn(int turn_index) const;
  std::span<const TurnEntry> table(int sublattice) const { return tables_.at(sublattice); }

  // nullopt when the pattern is redundant.
  std::optional<TurnEntry> lookup(int turn_index, unsigned pattern) const;
  std::optional<unsigned> pattern_of(int turn_index, int label) const;
  bool is_redundant(unsigned pattern) const;
  std::span<const unsigned> redundant_patterns() const { return redundant_; }

  // Squared neighbour-shell distances, k = 1 first.
  std::span<const int> knn_squared() const { return knn_squared_; }
  int max_knn_order() const { return static_cast<int>(knn_squared_.size()); }
  // Throws DomainError for k outside [1, max_knn_order()].
  int knn_squared(int k) const;
  double knn_distance(int k) const;

  // Canonical fixed bits prepended to every measured bitstring.
  std::string_view fixed_prefix() const { return fixed_prefix_; }
  int fixed_bit_count() const { return static_cast<int>(fixed_prefix_.size()); }
  int min_residues() const { return min_residues_; }

 private:
  friend const LatticeSpec& lattice(LatticeKind kind);
  LatticeSpec() = default;

  LatticeKind kind_ = LatticeKind::kTetra;
  int qubits_per_turn_ = 0;
  std::vector<std::vector<TurnEntry>> tables_;
  std::vector<unsigned> redundant_;
  std::vector<int> knn_squared_;
  std::string fixed_prefix_;
  int min_residues_ = 0;
};

const LatticeSpec& lattice(LatticeKind kind);

// Number of configuration qubits for `n` residues; DomainError below the
// lattice minimum.
int qubit_count(LatticeKind kind, int n);
double knn_distance(LatticeKind kind, int k);

struct Turn {
  unsigned pattern = 0;
  int label = kRedundantLabel;
  Vec3 step;  // zero for redundant patterns

  bool redundant() const { return label == kRedundantLabel; }
};

struct TurnSequence {
  LatticeKind lattice = LatticeKind::kTetra;
  std::vector<Turn> turns;  // N-1 entries, fixed prefix included

  int redundant_count() const;
  std::vector<int> labels() const;
};

struct Conformation {
  std::vector<Vec3> coords;
  int redundant_count = 0;

  int n_residues() const { return static_cast<int>(coords.size()); }
};

// `bits` holds only the variable qubits; the fixed prefix is prepended here.
TurnSequence decode_bitstring(std::string_view bits, LatticeKind kind, int n);
TurnSequence decode_bits(Bits bits, LatticeKind kind, int n);

Conformation to_conformation(const TurnSequence& turns);

// Inverse of decode_bitstring.  `labels` has N-1 entries and must agree with
// the fixed prefix.  Redundant turns cannot be named by label; the
// TurnSequence overload re-emits their raw patterns.
std::string encode_turns(std::span<const int> labels, LatticeKind kind, int n);
std::string encode_turns(const TurnSequence& turns, int n);

// Reference table: lattice,label,bits,dx,dy,dz (tetrahedral B labels carry a
// "bar" suffix).
std::string turn_table_csv();

}  // namespace qpsp
