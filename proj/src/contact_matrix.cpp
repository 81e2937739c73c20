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

#include "qpsp/contact_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qpsp/error.hpp"

namespace qpsp {

// Generated from data/mj1996.csv at configure time.
extern const char* const kMiyazawaJerniganCsv;

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

ContactMatrix::ContactMatrix(std::string residues, std::vector<double> values)
    : residues_(std::move(residues)), values_(std::move(values)) {
  const auto n = residues_.size();
  if (n == 0) throw ParameterError("contact matrix has no residues");
  if (values_.size() != n * n) throw ParameterError("contact matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (residues_.find(residues_[i], i + 1) != std::string::npos) {
      throw ParameterError(std::string("duplicate residue '") + residues_[i] + "' in contact matrix");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = values_[i * n + j];
      if (!std::isfinite(a)) throw ParameterError("contact matrix has a non-finite entry");
      if (std::abs(a - values_[j * n + i]) > 1e-12) {
        throw ParameterError(std::string("contact matrix asymmetric at ") + residues_[i] + "/" + residues_[j]);
      }
    }
  }
}

ContactMatrix ContactMatrix::from_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!trim(line).empty()) rows.push_back(split_csv_line(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (rows.size() < 2) throw ParameterError("contact matrix CSV needs a header and at least one row");
  std::string residues;
  for (std::size_t c = 1; c < rows[0].size(); ++c) {
    if (rows[0][c].size() != 1) throw ParameterError("contact matrix header must hold one-letter codes");
    residues += rows[0][c][0];
  }
  if (rows.size() != residues.size() + 1) throw ParameterError("contact matrix CSV row count mismatch");
  std::vector<double> values(residues.size() * residues.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != residues.size() + 1 || row[0].size() != 1 || row[0][0] != residues[r - 1]) {
      throw ParameterError("contact matrix CSV row " + std::to_string(r) + " malformed");
    }
    for (std::size_t c = 1; c < row.size(); ++c) {
      try {
        std::size_t used = 0;
        values[(r - 1) * residues.size() + (c - 1)] = std::stod(row[c], &used);
        if (used != row[c].size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw ParameterError("contact matrix CSV has a non-numeric cell '" + row[c] + "'");
      }
    }
  }
  return ContactMatrix(std::move(residues), std::move(values));
}

ContactMatrix ContactMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read contact matrix " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv(buf.str());
}

const ContactMatrix& ContactMatrix::miyazawa_jernigan() {
  static const ContactMatrix mj = from_csv(kMiyazawaJerniganCsv);
  return mj;
}

ContactMatrix ContactMatrix::uniform(std::string residues, double value) {
  const auto n = residues.size();
  return ContactMatrix(std::move(residues), std::vector<double>(n * n, value));
}

bool ContactMatrix::contains(char residue) const { return residues_.find(residue) != std::string::npos; }

int ContactMatrix::index(char residue) const {
  auto pos = residues_.find(residue);
  if (pos == std::string::npos) throw ParameterError(std::string("unknown residue '") + residue + "'");
  return static_cast<int>(pos);
}

double ContactMatrix::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double ContactMatrix::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

std::string ContactMatrix::to_csv() const {
  std::string out;
  for (char r : residues_) (out += ',') += r;
  out += '\n';
  char buf[40];
  for (int i = 0; i < size(); ++i) {
    out += residues_[static_cast<std::size_t>(i)];
    for (int j = 0; j < size(); ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", at(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::uint64_t ContactMatrix::fingerprint() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : to_csv()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void check_sequence(std::string_view sequence, const ContactMatrix& matrix) {
  for (char c : sequence) {
    if (!matrix.contains(c)) throw ParameterError(std::string("residue '") + c + "' not in contact matrix");
  }
}

}  // namespace qpsp
