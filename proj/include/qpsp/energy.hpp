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

#include <string>
#include <string_view>
#include <vector>

#include "qpsp/bits.hpp"
#include "qpsp/contact_matrix.hpp"
#include "qpsp/lattice.hpp"

namespace qpsp {

struct EnergyParams {
  ContactMatrix contact = ContactMatrix::miyazawa_jernigan();
  double lambda_olap = 1.0;
  double lambda_redun = 1.0;
  int max_k = 1;
  bool exclude_bonded = false;

  // Throws ParameterError/DomainError when a field is out of range for the
  // lattice.
  void validate(LatticeKind kind) const;
};

// Smallest penalty that keeps every overlapping or redundant conformation
// above every valid one for an n-residue chain: pairs * spread + 1, where
// spread covers the most attractive and most repulsive matrix entries.
double default_penalty(const ContactMatrix& matrix, int n);

// Parameters with both penalties set to default_penalty.
EnergyParams default_params(ContactMatrix matrix, int n, int max_k = 1, bool exclude_bonded = false);

struct EnergyBreakdown {
  double e_olap = 0.0;
  double e_int = 0.0;
  double e_redun = 0.0;
  double e_total = 0.0;
  std::vector<double> per_k;  // E_int^(k), k = 1..K
};

// Pairwise bead distances.  Squared distances are exact integers.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Conformation& conf);

  int size() const { return n_; }
  int squared(int i, int j) const { return sq_[static_cast<std::size_t>(i * n_ + j)]; }
  double operator()(int i, int j) const;

 private:
  int n_;
  std::vector<int> sq_;
};

double overlap_energy(const DistanceMatrix& d, const EnergyParams& params);
double redundancy_energy(const TurnSequence& turns, const EnergyParams& params);

struct InteractionEnergy {
  std::vector<double> per_k;
  double total = 0.0;
};

// Each pair at the k-th shell contributes eps_ij * d(1)/d(k).
InteractionEnergy interaction_energy(const DistanceMatrix& d, std::string_view sequence, LatticeKind kind,
                                     const EnergyParams& params);

EnergyBreakdown total_energy(std::string_view bits, std::string_view sequence, LatticeKind kind,
                             const EnergyParams& params);

// Energy of packed bitstrings for one fixed problem instance.
class EnergyFunction {
 public:
  EnergyFunction(std::string sequence, LatticeKind kind, EnergyParams params);

  const std::string& sequence() const { return sequence_; }
  LatticeKind lattice_kind() const { return kind_; }
  const EnergyParams& params() const { return params_; }
  int n_residues() const { return static_cast<int>(sequence_.size()); }
  int qubits() const { return qubits_; }

  EnergyBreakdown breakdown(Bits bits) const;
  double operator()(Bits bits) const { return breakdown(bits).e_total; }

 private:
  std::string sequence_;
  LatticeKind kind_;
  EnergyParams params_;
  int qubits_;
};

}  // namespace qpsp
