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

#include "qpsp/run_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "qpsp/error.hpp"

namespace qpsp {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void atomic_write(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

EnergyParams ProblemSpec::params() const {
  EnergyParams p = default_params(matrix, n(), knn, exclude_bonded);
  if (lambda_olap) p.lambda_olap = *lambda_olap;
  if (lambda_redun) p.lambda_redun = *lambda_redun;
  p.validate(lattice);
  return p;
}

std::string ProblemSpec::oracle_key() const {
  const std::string text = "sequence=" + sequence + ";lattice=" + std::string(lattice_name(lattice)) +
                           ";knn=" + std::to_string(knn) + ";exclude_bonded=" + (exclude_bonded ? "1" : "0") +
                           ";matrix=" + hex(matrix.fingerprint());
  return hex(fnv1a64(text));
}

std::string oracle_document(const ProblemSpec& problem, const OracleResult& result) {
  ordered_json j;
  j["key"] = problem.oracle_key();
  j["sequence"] = problem.sequence;
  j["lattice"] = lattice_name(problem.lattice);
  j["knn"] = problem.knn;
  j["exclude_bonded"] = problem.exclude_bonded;
  j["matrix_fingerprint"] = hex(problem.matrix.fingerprint());
  j["qubits"] = result.width;
  const auto body = ordered_json::parse(result.to_json());
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j.dump(2) + "\n";
}

StoredOracle parse_oracle_document(std::string_view text) {
  StoredOracle s;
  s.result = OracleResult::from_json(text);
  try {
    const auto j = nlohmann::json::parse(text);
    s.key = j.value("key", std::string());
    if (j.contains("qubits")) s.result.width = j.at("qubits").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed oracle JSON: ") + e.what());
  }
  return s;
}

std::string trace_csv(const RunRecord& rec) {
  std::string out = "iter,cvar\n";
  for (std::size_t i = 0; i < rec.cvar_trace.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_double(rec.cvar_trace[i]) + "\n";
  }
  return out;
}

std::string ledger_csv(const RunRecord& rec) {
  std::string out = "bitstring,energy,first_seen_iter\n";
  for (const auto& [bits, entry] : rec.ledger) {
    out += format_bits(bits, rec.width) + "," + format_double(entry.energy) + "," +
           std::to_string(entry.first_seen) + "\n";
  }
  return out;
}

std::string params_json(const RunRecord& rec, int index) {
  ordered_json j;
  j["restart"] = index;
  j["seed"] = rec.seed;
  j["params"] = rec.best_params;
  j["initial_params"] = rec.initial_params;
  j["final_cvar"] = rec.final_cost;
  j["e_lowest"] = rec.e_lowest;
  j["evaluations"] = rec.cvar_trace.size();
  j["ledger_size"] = rec.ledger.size();
  j["termination"] = termination_name(rec.termination);
  return j.dump(2) + "\n";
}

StoredParams parse_params_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    StoredParams p;
    p.seed = j.at("seed").get<std::uint64_t>();
    p.params = j.at("params").get<std::vector<double>>();
    p.final_cvar = j.at("final_cvar").get<double>();
    p.e_lowest = j.at("e_lowest").get<double>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed params JSON: ") + e.what());
  }
}

std::string samples_csv(const SampleSet& samples, const EnergyLookup& energy) {
  std::string out = "bitstring,count,energy\n";
  for (const auto& [bits, count] : samples.counts) {
    out += format_bits(bits, samples.width) + "," + std::to_string(count) + "," + format_double(energy(bits)) + "\n";
  }
  return out;
}

}  // namespace qpsp
