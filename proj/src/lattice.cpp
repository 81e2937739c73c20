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

#include "qpsp/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qpsp/error.hpp"

namespace qpsp {

Bits parse_bits(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxPackedWidth)) {
    throw CodecError("bitstring longer than 64 qubits");
  }
  Bits value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw CodecError("bitstring contains a character other than 0/1");
    value = (value << 1) | static_cast<Bits>(c - '0');
  }
  return value;
}

std::string format_bits(Bits bits, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q) {
    if (bit_at(bits, width, q)) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

std::string_view lattice_name(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::kTetra: return "tetra";
    case LatticeKind::kBcc: return "bcc";
    case LatticeKind::kFcc: return "fcc";
  }
  return "?";
}

LatticeKind parse_lattice(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "tetra" || lower == "tetrahedral") return LatticeKind::kTetra;
  if (lower == "bcc") return LatticeKind::kBcc;
  if (lower == "fcc") return LatticeKind::kFcc;
  throw DomainError("unknown lattice '" + std::string(name) + "'");
}

const LatticeSpec& lattice(LatticeKind kind) {
  static const LatticeSpec tetra = [] {
    LatticeSpec s;
    s.kind_ = LatticeKind::kTetra;
    s.qubits_per_turn_ = 2;
    s.tables_ = {
        {{0, 0b00, {1, 1, 1}}, {1, 0b01, {-1, -1, 1}}, {2, 0b10, {1, -1, -1}}, {3, 0b11, {-1, 1, -1}}},
        {{0, 0b00, {-1, -1, -1}}, {1, 0b01, {1, 1, -1}}, {2, 0b10, {1, -1, 1}}, {3, 0b11, {-1, 1, 1}}},
    };
    s.knn_squared_ = {3, 8, 11, 16, 19};
    // turn 0 = A-label 1, turn 1 = B-label 0bar, first qubit of turn 2 = 0
    s.fixed_prefix_ = "01000";
    s.min_residues_ = 4;
    return s;
  }();
  static const LatticeSpec bcc = [] {
    LatticeSpec s;
    s.kind_ = LatticeKind::kBcc;
    s.qubits_per_turn_ = 3;
    s.tables_ = {{{0, 0b000, {1, 1, -1}},
                  {1, 0b001, {-1, 1, -1}},
                  {2, 0b010, {-1, -1, 1}},
                  {3, 0b011, {-1, 1, 1}},
                  {4, 0b100, {1, -1, -1}},
                  {5, 0b101, {1, -1, 1}},
                  {6, 0b110, {-1, -1, -1}},
                  {7, 0b111, {1, 1, 1}}}};
    s.knn_squared_ = {3, 4, 8, 11, 12};
    s.fixed_prefix_ = "0000";
    s.min_residues_ = 3;
    return s;
  }();
  static const LatticeSpec fcc = [] {
    LatticeSpec s;
    s.kind_ = LatticeKind::kFcc;
    s.qubits_per_turn_ = 4;
    s.tables_ = {{{0, 0b0000, {1, 1, 0}},
                  {1, 0b0011, {-1, -1, 0}},
                  {2, 0b1100, {-1, 1, 0}},
                  {3, 0b1111, {1, -1, 0}},
                  {4, 0b1001, {0, 1, 1}},
                  {5, 0b0101, {0, -1, -1}},
                  {6, 0b1010, {0, 1, -1}},
                  {7, 0b0110, {0, -1, 1}},
                  {8, 0b1000, {1, 0, 1}},
                  {9, 0b0100, {-1, 0, -1}},
                  {10, 0b1011, {1, 0, -1}},
                  {11, 0b0111, {-1, 0, 1}}}};
    s.redundant_ = {0b0001, 0b0010, 0b1101, 0b1110};
    s.knn_squared_ = {2, 4, 6, 8, 10};
    // turn 0 = label 0, first two qubits of turn 1 = 10 (labels 8, 4, 6, 10)
    s.fixed_prefix_ = "000010";
    s.min_residues_ = 3;
    return s;
  }();
  switch (kind) {
    case LatticeKind::kTetra: return tetra;
    case LatticeKind::kBcc: return bcc;
    case LatticeKind::kFcc: return fcc;
  }
  throw DomainError("unknown lattice kind");
}

std::span<const TurnEntry> LatticeSpec::table_for_turn(int turn_index) const {
  return tables_[static_cast<std::size_t>(turn_index % sublattice_count())];
}

std::optional<TurnEntry> LatticeSpec::lookup(int turn_index, unsigned pattern) const {
  for (const auto& entry : table_for_turn(turn_index)) {
    if (entry.pattern == pattern) return entry;
  }
  return std::nullopt;
}

std::optional<unsigned> LatticeSpec::pattern_of(int turn_index, int label) const {
  for (const auto& entry : table_for_turn(turn_index)) {
    if (entry.label == label) return entry.pattern;
  }
  return std::nullopt;
}

bool LatticeSpec::is_redundant(unsigned pattern) const {
  return std::find(redundant_.begin(), redundant_.end(), pattern) != redundant_.end();
}

int LatticeSpec::knn_squared(int k) const {
  if (k < 1 || k > max_knn_order()) {
    throw DomainError("k-NN order " + std::to_string(k) + " unsupported (1.." +
                      std::to_string(max_knn_order()) + ")");
  }
  return knn_squared_[static_cast<std::size_t>(k - 1)];
}

double LatticeSpec::knn_distance(int k) const { return std::sqrt(static_cast<double>(knn_squared(k))); }

int qubit_count(LatticeKind kind, int n) {
  const LatticeSpec& spec = lattice(kind);
  if (n < spec.min_residues()) {
    throw DomainError(std::string(lattice_name(kind)) + " needs at least " +
                      std::to_string(spec.min_residues()) + " residues, got " + std::to_string(n));
  }
  return spec.qubits_per_turn() * (n - 1) - spec.fixed_bit_count();
}

double knn_distance(LatticeKind kind, int k) { return lattice(kind).knn_distance(k); }

int TurnSequence::redundant_count() const {
  return static_cast<int>(std::count_if(turns.begin(), turns.end(), [](const Turn& t) { return t.redundant(); }));
}

std::vector<int> TurnSequence::labels() const {
  std::vector<int> out;
  out.reserve(turns.size());
  for (const auto& t : turns) out.push_back(t.label);
  return out;
}

namespace {

TurnSequence decode_full(std::string_view full, LatticeKind kind, int n) {
  const LatticeSpec& spec = lattice(kind);
  const int q = spec.qubits_per_turn();
  TurnSequence seq;
  seq.lattice = kind;
  seq.turns.reserve(static_cast<std::size_t>(n - 1));
  for (int t = 0; t < n - 1; ++t) {
    unsigned pattern = 0;
    for (int b = 0; b < q; ++b) {
      pattern = (pattern << 1) | static_cast<unsigned>(full[static_cast<std::size_t>(t * q + b)] == '1');
    }
    Turn turn;
    turn.pattern = pattern;
    if (auto entry = spec.lookup(t, pattern)) {
      turn.label = entry->label;
      turn.step = entry->step;
    }
    seq.turns.push_back(turn);
  }
  return seq;
}

std::string pattern_string(unsigned pattern, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b) {
    if ((pattern >> (width - 1 - b)) & 1U) out[static_cast<std::size_t>(b)] = '1';
  }
  return out;
}

std::string strip_prefix(const std::string& full, const LatticeSpec& spec) {
  const std::string_view prefix = spec.fixed_prefix();
  if (full.compare(0, prefix.size(), prefix) != 0) {
    throw CodecError("turns disagree with the fixed prefix " + std::string(prefix));
  }
  return full.substr(prefix.size());
}

}  // namespace

TurnSequence decode_bitstring(std::string_view bits, LatticeKind kind, int n) {
  const int expected = qubit_count(kind, n);
  if (static_cast<int>(bits.size()) != expected) {
    throw CodecError("bitstring has " + std::to_string(bits.size()) + " qubits, expected " +
                     std::to_string(expected));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') throw CodecError("bitstring contains a character other than 0/1");
  }
  std::string full(lattice(kind).fixed_prefix());
  full.append(bits);
  return decode_full(full, kind, n);
}

TurnSequence decode_bits(Bits bits, LatticeKind kind, int n) {
  const int width = qubit_count(kind, n);
  if (width < kMaxPackedWidth && (bits >> width) != 0) throw CodecError("packed bitstring wider than qubit count");
  std::string full(lattice(kind).fixed_prefix());
  full.append(format_bits(bits, width));
  return decode_full(full, kind, n);
}

Conformation to_conformation(const TurnSequence& turns) {
  Conformation conf;
  conf.coords.reserve(turns.turns.size() + 1);
  conf.coords.push_back({0, 0, 0});
  for (const auto& t : turns.turns) {
    conf.coords.push_back(conf.coords.back() + t.step);
    if (t.redundant()) ++conf.redundant_count;
  }
  return conf;
}

std::string encode_turns(std::span<const int> labels, LatticeKind kind, int n) {
  const LatticeSpec& spec = lattice(kind);
  qubit_count(kind, n);
  if (static_cast<int>(labels.size()) != n - 1) {
    throw CodecError("expected " + std::to_string(n - 1) + " turn labels, got " + std::to_string(labels.size()));
  }
  std::string full;
  for (int t = 0; t < n - 1; ++t) {
    auto pattern = spec.pattern_of(t, labels[static_cast<std::size_t>(t)]);
    if (!pattern) throw CodecError("label " + std::to_string(labels[static_cast<std::size_t>(t)]) + " invalid at turn " + std::to_string(t));
    full += pattern_string(*pattern, spec.qubits_per_turn());
  }
  return strip_prefix(full, spec);
}

std::string encode_turns(const TurnSequence& turns, int n) {
  const LatticeSpec& spec = lattice(turns.lattice);
  qubit_count(turns.lattice, n);
  if (static_cast<int>(turns.turns.size()) != n - 1) {
    throw CodecError("expected " + std::to_string(n - 1) + " turns, got " + std::to_string(turns.turns.size()));
  }
  std::string full;
  for (int t = 0; t < n - 1; ++t) {
    const Turn& turn = turns.turns[static_cast<std::size_t>(t)];
    unsigned pattern = turn.pattern;
    if (!turn.redundant()) {
      auto from_label = spec.pattern_of(t, turn.label);
      if (!from_label) throw CodecError("label " + std::to_string(turn.label) + " invalid at turn " + std::to_string(t));
      pattern = *from_label;
    } else if (!spec.is_redundant(pattern)) {
      throw CodecError("turn " + std::to_string(t) + " marked redundant but pattern is a valid turn");
    }
    full += pattern_string(pattern, spec.qubits_per_turn());
  }
  return strip_prefix(full, spec);
}

std::string turn_table_csv() {
  std::ostringstream out;
  out << "lattice,label,bits,dx,dy,dz\n";
  for (LatticeKind kind : {LatticeKind::kTetra, LatticeKind::kBcc, LatticeKind::kFcc}) {
    const LatticeSpec& spec = lattice(kind);
    for (int sub = 0; sub < spec.sublattice_count(); ++sub) {
      for (const auto& e : spec.table(sub)) {
        out << lattice_name(kind) << ',' << e.label << (sub == 1 ? "bar" : "") << ','
            << pattern_string(e.pattern, spec.qubits_per_turn()) << ',' << e.step.x << ',' << e.step.y << ','
            << e.step.z << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace qpsp
