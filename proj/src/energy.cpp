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

#include "qpsp/energy.hpp"

#include <algorithm>
#include <cmath>

#include "qpsp/error.hpp"

namespace qpsp {

void EnergyParams::validate(LatticeKind kind) const {
  if (!(lambda_olap > 0.0) || !(lambda_redun > 0.0)) throw ParameterError("penalties must be positive");
  lattice(kind).knn_squared(max_k);
}

double default_penalty(const ContactMatrix& matrix, int n) {
  const double pairs = 0.5 * n * (n - 1);
  const double spread = std::max(0.0, -matrix.min_value()) + std::max(0.0, matrix.max_value());
  return pairs * spread + 1.0;
}

EnergyParams default_params(ContactMatrix matrix, int n, int max_k, bool exclude_bonded) {
  EnergyParams p{std::move(matrix)};
  p.lambda_olap = default_penalty(p.contact, n);
  p.lambda_redun = p.lambda_olap;
  p.max_k = max_k;
  p.exclude_bonded = exclude_bonded;
  return p;
}

DistanceMatrix::DistanceMatrix(const Conformation& conf)
    : n_(conf.n_residues()), sq_(static_cast<std::size_t>(n_ * n_), 0) {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const int d2 = (conf.coords[static_cast<std::size_t>(i)] - conf.coords[static_cast<std::size_t>(j)]).norm2();
      sq_[static_cast<std::size_t>(i * n_ + j)] = d2;
      sq_[static_cast<std::size_t>(j * n_ + i)] = d2;
    }
  }
}

double DistanceMatrix::operator()(int i, int j) const { return std::sqrt(static_cast<double>(squared(i, j))); }

double overlap_energy(const DistanceMatrix& d, const EnergyParams& params) {
  int overlaps = 0;
  for (int i = 0; i < d.size(); ++i) {
    for (int j = i + 1; j < d.size(); ++j) overlaps += d.squared(i, j) == 0;
  }
  return params.lambda_olap * overlaps;
}

double redundancy_energy(const TurnSequence& turns, const EnergyParams& params) {
  return params.lambda_redun * turns.redundant_count();
}

InteractionEnergy interaction_energy(const DistanceMatrix& d, std::string_view sequence, LatticeKind kind,
                                     const EnergyParams& params) {
  if (static_cast<int>(sequence.size()) != d.size()) {
    throw ParameterError("sequence length does not match the conformation");
  }
  const LatticeSpec& spec = lattice(kind);
  const ContactMatrix& eps = params.contact;
  std::vector<int> idx(sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i) idx[i] = eps.index(sequence[i]);

  InteractionEnergy out;
  out.per_k.assign(static_cast<std::size_t>(params.max_k), 0.0);
  const double d1 = spec.knn_distance(1);
  const int first_partner = params.exclude_bonded ? 2 : 1;
  for (int k = 1; k <= params.max_k; ++k) {
    const int shell = spec.knn_squared(k);
    const double scale = d1 / spec.knn_distance(k);
    double sum = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      for (int j = i + first_partner; j < d.size(); ++j) {
        if (d.squared(i, j) == shell) sum += eps.at(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]) * scale;
      }
    }
    out.per_k[static_cast<std::size_t>(k - 1)] = sum;
    out.total += sum;
  }
  return out;
}

namespace {

EnergyBreakdown score(const TurnSequence& turns, std::string_view sequence, const EnergyParams& params) {
  const Conformation conf = to_conformation(turns);
  const DistanceMatrix d(conf);
  EnergyBreakdown b;
  b.e_olap = overlap_energy(d, params);
  b.e_redun = redundancy_energy(turns, params);
  auto inter = interaction_energy(d, sequence, turns.lattice, params);
  b.e_int = inter.total;
  b.per_k = std::move(inter.per_k);
  b.e_total = b.e_olap + b.e_int + b.e_redun;
  return b;
}

}  // namespace

EnergyBreakdown total_energy(std::string_view bits, std::string_view sequence, LatticeKind kind,
                             const EnergyParams& params) {
  params.validate(kind);
  check_sequence(sequence, params.contact);
  return score(decode_bitstring(bits, kind, static_cast<int>(sequence.size())), sequence, params);
}

EnergyFunction::EnergyFunction(std::string sequence, LatticeKind kind, EnergyParams params)
    : sequence_(std::move(sequence)), kind_(kind), params_(std::move(params)),
      qubits_(qubit_count(kind, static_cast<int>(sequence_.size()))) {
  params_.validate(kind_);
  check_sequence(sequence_, params_.contact);
}

EnergyBreakdown EnergyFunction::breakdown(Bits bits) const {
  return score(decode_bits(bits, kind_, n_residues()), sequence_, params_);
}

}  // namespace qpsp
