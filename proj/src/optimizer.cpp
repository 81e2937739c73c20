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

#include "qpsp/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "qpsp/cvar.hpp"
#include "qpsp/error.hpp"

namespace qpsp {

Problem Problem::from(const EnergyFunction& fn) {
  return Problem{fn.qubits(), [fn](Bits b) { return fn(b); }};
}

std::string_view cvar_mode_name(CvarMode mode) {
  return mode == CvarMode::kShotSampled ? "shot" : "exact";
}

CvarMode parse_cvar_mode(std::string_view name) {
  if (name == "shot") return CvarMode::kShotSampled;
  if (name == "exact") return CvarMode::kExactDistribution;
  throw ParameterError("unknown CVaR mode '" + std::string(name) + "' (expected shot or exact)");
}

void CvarConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (mode == CvarMode::kShotSampled) {
    if (shots < 1) throw ParameterError("shots per evaluation must be >= 1");
    if (alpha * static_cast<double>(shots) < 1.0 - 1e-9) {
      throw ParameterError("alpha * shots must be at least one tail sample");
    }
  }
}

std::string_view method_name(Method method) {
  return method == Method::kCobyla ? "cobyla" : "nelder-mead";
}

Method parse_method(std::string_view name) {
  if (name == "cobyla") return Method::kCobyla;
  if (name == "nelder-mead") return Method::kNelderMead;
  throw ParameterError("unknown optimizer '" + std::string(name) + "' (expected cobyla or nelder-mead)");
}

void OptimizerConfig::validate() const {
  if (max_iter < 1) throw ParameterError("max_iter must be >= 1");
  if (restarts < 1) throw ParameterError("restarts must be >= 1");
  if (!(initial_step > 0.0)) throw ParameterError("initial step must be positive");
  if (!(tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  if (threads < 0) throw ParameterError("threads must be >= 0");
}

double EnergyCache::operator()(Bits bits) {
  auto it = cache_.find(bits);
  if (it != cache_.end()) return it->second;
  const double e = problem_->energy(bits);
  cache_.emplace(bits, e);
  return e;
}

Evaluation evaluate_params(std::span<const double> theta, const AnsatzSpec& spec, const Problem& problem,
                           const CvarConfig& cvar, const SimOptions& sim, std::mt19937_64& rng,
                           EnergyCache& cache) {
  if (spec.m_qubits != problem.qubits) throw DomainError("ansatz width differs from the problem width");
  const QuantumState state = simulate(spec, theta, sim);
  Evaluation out;
  if (cvar.mode == CvarMode::kShotSampled) {
    const SampleSet samples = state.sample(cvar.shots, rng());
    std::vector<std::pair<double, std::int64_t>> weighted;
    weighted.reserve(samples.counts.size());
    for (const auto& [bits, count] : samples.counts) {
      const double e = cache(bits);
      weighted.emplace_back(e, count);
      out.observed.emplace_back(bits, e);
    }
    out.cost = cvar_cost_counts(std::move(weighted), cvar.alpha);
    return out;
  }

  const std::vector<double> p = state.exact_distribution(sim.dense_qubit_limit);
  std::vector<std::pair<double, double>> weighted;
  std::vector<std::pair<double, Bits>> order;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double e = cache(static_cast<Bits>(i));
    weighted.emplace_back(e, p[i]);
    order.emplace_back(e, static_cast<Bits>(i));
  }
  out.cost = cvar_cost_distribution(weighted, cvar.alpha);
  std::sort(order.begin(), order.end());
  double total = 0.0;
  for (const auto& w : weighted) total += w.second;
  double mass = 0.0;
  for (const auto& [e, bits] : order) {
    if (mass >= cvar.alpha * total) break;
    mass += p[bits];
    out.observed.emplace_back(bits, e);
  }
  std::sort(out.observed.begin(), out.observed.end());
  return out;
}

RunRecord optimize(const Problem& problem, const AnsatzSpec& spec, const CvarConfig& cvar,
                   const OptimizerConfig& opt, const SimOptions& sim, const EvaluationObserver& observer) {
  cvar.validate();
  opt.validate();
  if (spec.m_qubits != problem.qubits) throw DomainError("ansatz width differs from the problem width");

  RunRecord rec;
  rec.seed = opt.seed;
  rec.width = problem.qubits;
  std::mt19937_64 rng(opt.seed);
  rec.initial_params.resize(static_cast<std::size_t>(spec.parameter_count()));
  for (auto& t : rec.initial_params) t = -std::numbers::pi + 2.0 * std::numbers::pi * uniform01(rng);

  EnergyCache cache(problem);
  rec.e_lowest = std::numeric_limits<double>::infinity();
  int iteration = 0;
  const Objective objective = [&](std::span<const double> theta) {
    ++iteration;
    Evaluation ev = evaluate_params(theta, spec, problem, cvar, sim, rng, cache);
    if (!std::isfinite(ev.cost)) {
      throw Error("non-finite CVaR at evaluation " + std::to_string(iteration));
    }
    rec.cvar_trace.push_back(ev.cost);
    for (const auto& [bits, e] : ev.observed) {
      if (rec.ledger.emplace(bits, LedgerEntry{e, iteration}).second) rec.e_lowest = std::min(rec.e_lowest, e);
    }
    if (observer) observer(iteration, ev);
    return ev.cost;
  };

  MinimizeOptions mo;
  mo.initial_step = opt.initial_step;
  mo.tolerance = opt.tolerance;
  mo.max_evaluations = opt.max_iter;
  const MinimizeResult res = opt.method == Method::kCobyla
                                 ? minimize_cobyla(objective, rec.initial_params, mo)
                                 : minimize_nelder_mead(objective, rec.initial_params, mo);
  rec.best_params = res.x;
  rec.final_cost = res.f;
  rec.termination = res.termination;
  return rec;
}

std::uint64_t restart_seed(std::uint64_t master, int index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RestartSummary summarize(std::span<const double> final_cvar, std::span<const double> e_lowest) {
  if (final_cvar.empty()) throw DomainError("summary of zero runs");
  RestartSummary s;
  s.final_cvar.assign(final_cvar.begin(), final_cvar.end());
  std::vector<double> sorted = s.final_cvar;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean_cvar = sum / n;
  if (sorted.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean_cvar) * (v - s.mean_cvar);
    s.stderr_cvar = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  s.min_cvar = sorted.front();
  s.e_lowest = e_lowest.empty() ? std::numeric_limits<double>::infinity()
                                : *std::min_element(e_lowest.begin(), e_lowest.end());
  return s;
}

MultiRestartResult multi_restart(const Problem& problem, const AnsatzSpec& spec, const CvarConfig& cvar,
                                 const OptimizerConfig& opt, const SimOptions& sim) {
  cvar.validate();
  opt.validate();
  const auto runs = static_cast<std::size_t>(opt.restarts);
  MultiRestartResult out;
  out.records.resize(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < runs;) {
      try {
        OptimizerConfig one = opt;
        one.seed = restart_seed(opt.seed, static_cast<int>(r));
        out.records[r] = optimize(problem, spec, cvar, one, sim);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  unsigned hw = opt.threads > 0 ? static_cast<unsigned>(opt.threads) : std::thread::hardware_concurrency();
  const auto nthreads = std::clamp<std::size_t>(hw, 1, runs);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<double> finals;
  std::vector<double> lows;
  for (const auto& r : out.records) {
    finals.push_back(r.final_cost);
    lows.push_back(r.e_lowest);
  }
  out.summary = summarize(finals, lows);
  return out;
}

}  // namespace qpsp
