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
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpsp/bits.hpp"
#include "qpsp/circuit.hpp"
#include "qpsp/energy.hpp"
#include "qpsp/minimize.hpp"

namespace qpsp {

// Classical scoring of measured bitstrings.
struct Problem {
  int qubits = 0;
  std::function<double(Bits)> energy;

  static Problem from(const EnergyFunction& fn);
};

enum class CvarMode { kShotSampled, kExactDistribution };
std::string_view cvar_mode_name(CvarMode mode);
CvarMode parse_cvar_mode(std::string_view name);

struct CvarConfig {
  double alpha = 0.1;
  std::int64_t shots = 1000;
  CvarMode mode = CvarMode::kShotSampled;

  void validate() const;
};

enum class Method { kCobyla, kNelderMead };
std::string_view method_name(Method method);
Method parse_method(std::string_view name);

struct OptimizerConfig {
  Method method = Method::kCobyla;
  int max_iter = 5000;
  double initial_step = 1.0;
  double tolerance = 1e-6;
  int restarts = 10;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

class EnergyCache {
 public:
  explicit EnergyCache(const Problem& problem) : problem_(&problem) {}
  double operator()(Bits bits);
  std::size_t size() const { return cache_.size(); }

 private:
  const Problem* problem_;
  std::unordered_map<Bits, double> cache_;
};

struct Evaluation {
  double cost = 0.0;
  // Bitstrings that entered the cost, with their energies, ascending by bits.
  std::vector<std::pair<Bits, double>> observed;
};

// Simulates, samples (or takes the exact distribution) and returns the CVaR.
// Shot seeds are drawn from `rng`.
Evaluation evaluate_params(std::span<const double> theta, const AnsatzSpec& spec, const Problem& problem,
                           const CvarConfig& cvar, const SimOptions& sim, std::mt19937_64& rng,
                           EnergyCache& cache);

struct LedgerEntry {
  double energy = 0.0;
  int first_seen = 0;  // 1-based evaluation index
};

struct RunRecord {
  std::uint64_t seed = 0;
  int width = 0;
  std::vector<double> initial_params;
  std::vector<double> best_params;
  double final_cost = 0.0;
  std::vector<double> cvar_trace;
  std::map<Bits, LedgerEntry> ledger;
  double e_lowest = 0.0;
  Termination termination = Termination::kMaxIter;
};

using EvaluationObserver = std::function<void(int iteration, const Evaluation&)>;

RunRecord optimize(const Problem& problem, const AnsatzSpec& spec, const CvarConfig& cvar,
                   const OptimizerConfig& opt, const SimOptions& sim = {},
                   const EvaluationObserver& observer = {});

// Seed of restart `index` derived from the master seed.
std::uint64_t restart_seed(std::uint64_t master, int index);

struct RestartSummary {
  std::vector<double> final_cvar;
  double mean_cvar = 0.0;
  double stderr_cvar = 0.0;
  double min_cvar = 0.0;
  double e_lowest = 0.0;
};

RestartSummary summarize(std::span<const double> final_cvar, std::span<const double> e_lowest);

struct MultiRestartResult {
  std::vector<RunRecord> records;
  RestartSummary summary;
};

MultiRestartResult multi_restart(const Problem& problem, const AnsatzSpec& spec, const CvarConfig& cvar,
                                 const OptimizerConfig& opt, const SimOptions& sim = {});

}  // namespace qpsp
