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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpsp/bits.hpp"

namespace qpsp {

// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
template <class Engine>
double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Gate {
  enum class Kind : std::uint8_t { kRy, kCnot };
  Kind kind;
  int qubit;   // Ry target, or CNOT control
  int target;  // CNOT target; unused for Ry
  int param;   // index into theta for Ry; -1 for CNOT
};

// Real-amplitude ansatz: an Ry layer, then per repetition a CNOT staircase
// (control i, target i+1, for i = M-2 down to 0) followed by another Ry layer.
struct AnsatzSpec {
  int m_qubits = 1;
  int reps = 1;

  int parameter_count() const { return (reps + 1) * m_qubits; }
  int cnot_count() const { return reps * (m_qubits - 1); }
  int gate_count() const { return parameter_count() + cnot_count(); }
  // ASAP-scheduled depth of the abstract circuit (no transpilation).
  int logical_depth() const;
  std::vector<Gate> gates() const;
};

AnsatzSpec build_ansatz(int m, int reps);

enum class Backend : std::uint8_t { kDense, kMps };

std::string_view backend_name(Backend backend);
Backend parse_backend(std::string_view name);

struct SimOptions {
  Backend backend = Backend::kDense;
  int bond_cap = 16;
  double truncation = 1e-12;  // discarded singular-value weight per cut
  int dense_qubit_limit = 28;
};

struct SampleSet {
  int width = 0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<Bits, std::int64_t> counts;

  // bitstring,count rows in ascending bitstring order
  std::string to_csv() const;
  static SampleSet from_csv(std::string_view text, std::uint64_t seed = 0);
};

// Real dense statevector; amplitude index is the packed bitstring.
struct DenseState {
  int qubits = 0;
  std::vector<double> amplitudes;
};

// Site tensors (left bond, physical, right bond) stored row-major.
struct MpsSite {
  int left = 1;
  int right = 1;
  std::vector<double> data;

  double& at(int a, int s, int b) { return data[static_cast<std::size_t>((a * 2 + s) * right + b)]; }
  double at(int a, int s, int b) const { return data[static_cast<std::size_t>((a * 2 + s) * right + b)]; }
};

struct MpsState {
  std::vector<MpsSite> sites;
  int center = 0;
  double discarded_weight = 0.0;
  int max_bond() const;
};

class QuantumState {
 public:
  explicit QuantumState(DenseState s) : state_(std::move(s)) {}
  explicit QuantumState(MpsState s) : state_(std::move(s)) {}

  Backend backend() const { return state_.index() == 0 ? Backend::kDense : Backend::kMps; }
  int qubits() const;
  double norm() const;
  const DenseState* dense() const { return std::get_if<DenseState>(&state_); }
  const MpsState* mps() const { return std::get_if<MpsState>(&state_); }

  // Amplitude of one basis state.
  double amplitude(Bits bits) const;
  // Probabilities indexed by packed bitstring; ResourceError above
  // `max_qubits`.
  std::vector<double> exact_distribution(int max_qubits = 28) const;
  std::map<std::string, double> distribution_map(double min_probability = 0.0, int max_qubits = 28) const;

  // Draws `shots` i.i.d. measurements.  Deterministic for a given seed.
  SampleSet sample(std::int64_t shots, std::uint64_t seed) const;

 private:
  std::variant<DenseState, MpsState> state_;
};

// Throws DomainError on a theta length mismatch and ResourceError when the
// dense backend is asked for more than dense_qubit_limit qubits.
QuantumState simulate(const AnsatzSpec& spec, std::span<const double> theta, const SimOptions& options = {});

}  // namespace qpsp
