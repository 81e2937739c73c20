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
#include <string>
#include <string_view>
#include <vector>

namespace qpsp {

// Symmetric residue-residue contact energies keyed by one-letter codes.
class ContactMatrix {
 public:
  // `values` is row-major |residues| x |residues|.  Throws ParameterError on
  // duplicate letters, wrong size, non-finite entries or asymmetry > 1e-12.
  ContactMatrix(std::string residues, std::vector<double> values);

  // CSV with a header row and a leading label column of residue letters.
  static ContactMatrix from_csv(std::string_view text);
  static ContactMatrix load(const std::filesystem::path& path);
  // Miyazawa-Jernigan (1996) contact energies shipped with the library.
  static const ContactMatrix& miyazawa_jernigan();
  static ContactMatrix uniform(std::string residues, double value);

  const std::string& residues() const { return residues_; }
  int size() const { return static_cast<int>(residues_.size()); }
  bool contains(char residue) const;
  // Throws ParameterError for unknown letters.
  int index(char residue) const;
  double at(int i, int j) const { return values_[static_cast<std::size_t>(i * size() + j)]; }
  double operator()(char a, char b) const { return at(index(a), index(b)); }

  double min_value() const;
  double max_value() const;
  // FNV-1a over the canonical CSV text; identifies the matrix in caches.
  std::uint64_t fingerprint() const;
  std::string to_csv() const;

 private:
  std::string residues_;
  std::vector<double> values_;
};

// Throws ParameterError naming the first residue missing from the matrix.
void check_sequence(std::string_view sequence, const ContactMatrix& matrix);

}  // namespace qpsp
