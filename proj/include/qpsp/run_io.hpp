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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qpsp/contact_matrix.hpp"
#include "qpsp/energy.hpp"
#include "qpsp/lattice.hpp"
#include "qpsp/optimizer.hpp"
#include "qpsp/metrics.hpp"
#include "qpsp/oracle.hpp"

namespace qpsp {

// Writes to a sibling temporary file, then renames over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Shortest round-trippable text for a double.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view text);

// Everything that determines the classical energy landscape.
struct ProblemSpec {
  std::string pdb_id;  // empty for raw sequences
  std::string sequence;
  LatticeKind lattice = LatticeKind::kFcc;
  int knn = 1;
  bool exclude_bonded = false;
  std::optional<double> lambda_olap;
  std::optional<double> lambda_redun;
  ContactMatrix matrix = ContactMatrix::miyazawa_jernigan();

  int n() const { return static_cast<int>(sequence.size()); }
  int qubits() const { return qubit_count(lattice, n()); }
  EnergyParams params() const;
  // Hex digest of (sequence, lattice, K, bonded policy, matrix fingerprint).
  std::string oracle_key() const;
};

// Oracle JSON tagged with the problem it solves.
std::string oracle_document(const ProblemSpec& problem, const OracleResult& result);

struct StoredOracle {
  std::string key;
  OracleResult result;
};
StoredOracle parse_oracle_document(std::string_view text);

// iter,cvar
std::string trace_csv(const RunRecord& rec);
// bitstring,energy,first_seen_iter in ascending bitstring order
std::string ledger_csv(const RunRecord& rec);
std::string params_json(const RunRecord& rec, int index);

struct StoredParams {
  std::uint64_t seed = 0;
  std::vector<double> params;
  double final_cvar = 0.0;
  double e_lowest = 0.0;
};
StoredParams parse_params_json(std::string_view text);

// Samples as bitstring,count,energy rows.
std::string samples_csv(const SampleSet& samples, const EnergyLookup& energy);

}  // namespace qpsp
