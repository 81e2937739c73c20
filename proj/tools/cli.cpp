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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "qpsp/error.hpp"
#include "qpsp/metrics.hpp"
#include "qpsp/optimizer.hpp"
#include "qpsp/oracle.hpp"
#include "qpsp/registry.hpp"
#include "qpsp/run_io.hpp"

namespace qpsp::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct ProblemFlags {
  std::string seq;
  std::string pdb_id;
  std::string lattice;
  int knn = 1;
  bool exclude_bonded = false;
  std::optional<double> lambda_olap;
  std::optional<double> lambda_redun;
  std::string matrix;

  void add_to(CLI::App* app) {
    app->add_option("--seq", seq, "Raw one-letter residue sequence");
    app->add_option("--pdb-id", pdb_id, "Registered instance (see `instances`)");
    app->add_option("--lattice", lattice, "Lattice")->check(CLI::IsMember({"tetra", "bcc", "fcc"}));
    app->add_option("--knn", knn, "Highest neighbour shell K")->capture_default_str();
    app->add_flag("--exclude-bonded", exclude_bonded, "Skip |i-j| = 1 pairs in the interaction sum");
    app->add_option("--lambda-olap", lambda_olap, "Overlap penalty (default: derived)");
    app->add_option("--lambda-redun", lambda_redun, "Redundant-turn penalty (default: derived)");
    app->add_option("--matrix", matrix, "Contact matrix CSV (default: Miyazawa-Jernigan)");
  }

  ProblemSpec resolve() const {
    ProblemSpec p;
    if (!pdb_id.empty()) {
      const auto inst = find_instance(pdb_id);
      if (!inst) throw UsageError("unknown instance '" + pdb_id + "'");
      p.pdb_id = std::string(inst->pdb_id);
      p.sequence = std::string(inst->sequence);
      if (!seq.empty() && seq != p.sequence) {
        throw UsageError("--seq does not match the sequence of " + p.pdb_id);
      }
      if (lattice.empty()) {
        int supported = 0;
        for (auto k : {LatticeKind::kTetra, LatticeKind::kBcc, LatticeKind::kFcc}) {
          if (inst->supports(k)) {
            p.lattice = k;
            ++supported;
          }
        }
        if (supported != 1) throw UsageError(p.pdb_id + " is listed on several lattices; pass --lattice");
      } else {
        p.lattice = parse_lattice(lattice);
        if (!inst->supports(p.lattice)) {
          throw UsageError(p.pdb_id + " is not registered on the " + lattice + " lattice");
        }
      }
    } else {
      if (seq.empty()) throw UsageError("pass --seq or --pdb-id");
      if (lattice.empty()) throw UsageError("--lattice is required with --seq");
      p.sequence = seq;
      p.lattice = parse_lattice(lattice);
    }
    p.knn = knn;
    p.exclude_bonded = exclude_bonded;
    p.lambda_olap = lambda_olap;
    p.lambda_redun = lambda_redun;
    if (!matrix.empty()) p.matrix = ContactMatrix::load(matrix);
    check_sequence(p.sequence, p.matrix);
    qubit_count(p.lattice, p.n());
    (void)p.params();
    return p;
  }
};

ordered_json problem_json(const ProblemSpec& p) {
  ordered_json j;
  j["pdb_id"] = p.pdb_id;
  j["sequence"] = p.sequence;
  j["lattice"] = lattice_name(p.lattice);
  j["n"] = p.n();
  j["qubits"] = p.qubits();
  j["knn"] = p.knn;
  j["exclude_bonded"] = p.exclude_bonded;
  const EnergyParams params = p.params();
  j["lambda_olap"] = params.lambda_olap;
  j["lambda_redun"] = params.lambda_redun;
  j["matrix_file"] = "matrix.csv";
  j["oracle_key"] = p.oracle_key();
  return j;
}

ProblemSpec problem_from_manifest(const nlohmann::json& m, const fs::path& dir) {
  const auto& j = m.at("problem");
  ProblemSpec p;
  p.pdb_id = j.at("pdb_id").get<std::string>();
  p.sequence = j.at("sequence").get<std::string>();
  p.lattice = parse_lattice(j.at("lattice").get<std::string>());
  p.knn = j.at("knn").get<int>();
  p.exclude_bonded = j.at("exclude_bonded").get<bool>();
  p.lambda_olap = j.at("lambda_olap").get<double>();
  p.lambda_redun = j.at("lambda_redun").get<double>();
  p.matrix = ContactMatrix::from_csv(read_file(dir / j.at("matrix_file").get<std::string>()));
  return p;
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("QPSP_CACHE_DIR")) return env;
  return ".qpsp-cache";
}

class Logger {
 public:
  Logger(std::ostream& err, const bool& quiet) : err_(err), quiet_(quiet) {}
  void operator()(const std::string& msg) const {
    if (!quiet_) err_ << "qpsp: " << msg << '\n';
  }

 private:
  std::ostream& err_;
  const bool& quiet_;
};

Backend resolve_backend(const std::string& name, int qubits) {
  if (name == "auto") return qubits <= 20 ? Backend::kDense : Backend::kMps;
  return parse_backend(name);
}

std::optional<OracleResult> load_oracle(const ProblemSpec& p, const std::string& oracle_file,
                                        const std::string& cache_dir, const Logger& log) {
  fs::path path = oracle_file.empty() ? fs::path(cache_dir) / (p.oracle_key() + ".json") : fs::path(oracle_file);
  if (!fs::exists(path)) {
    if (!oracle_file.empty()) throw UsageError("oracle file " + path.string() + " does not exist");
    return std::nullopt;
  }
  StoredOracle s = parse_oracle_document(read_file(path));
  if (s.key != p.oracle_key()) {
    throw UsageError("oracle hash mismatch: " + path.string() + " was computed for key " + s.key +
                     ", this problem has key " + p.oracle_key());
  }
  log("using ground state from " + path.string());
  return s.result;
}

OracleResult require_oracle(const ProblemSpec& p, const std::string& oracle_file, const std::string& cache_dir,
                            const Logger& log) {
  auto r = load_oracle(p, oracle_file, cache_dir, log);
  if (!r) {
    throw ResourceError("no ground-state result for this problem (key " + p.oracle_key() + " in " + cache_dir +
                        "); run `qpsp ground-state` with the same problem flags first");
  }
  if (!(r->e_gs < 0.0)) throw DomainError("ground-state energy is not negative; relative errors are undefined");
  return *r;
}

std::string instances_table(bool csv) {
  std::ostringstream out;
  if (csv) {
    out << "pdb_id,sequence,n,tetra,bcc,fcc\n";
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-6s %-28s %3s %6s %6s %6s\n", "PDB-ID", "Sequence", "N", "tetra", "bcc", "fcc");
    out << buf;
  }
  for (const auto& inst : instances()) {
    std::string cells[3];
    for (auto k : {LatticeKind::kTetra, LatticeKind::kBcc, LatticeKind::kFcc}) {
      cells[static_cast<int>(k)] = inst.supports(k) ? std::to_string(qubit_count(k, inst.n())) : "-";
    }
    if (csv) {
      out << inst.pdb_id << ',' << inst.sequence << ',' << inst.n() << ',' << cells[0] << ',' << cells[1] << ','
          << cells[2] << '\n';
    } else {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%-6s %-28s %3d %6s %6s %6s\n", std::string(inst.pdb_id).c_str(),
                    std::string(inst.sequence).c_str(), inst.n(), cells[0].c_str(), cells[1].c_str(),
                    cells[2].c_str());
      out << buf;
    }
  }
  return out.str();
}

std::string restart_dir_name(int r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "restart_%02d", r);
  return buf;
}

// Memoized energies for one problem.
class Scorer {
 public:
  explicit Scorer(const ProblemSpec& p) : fn_(p.sequence, p.lattice, p.params()) {}
  double operator()(Bits b) {
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(b, fn_(b)).first->second;
  }
  EnergyLookup lookup() {
    return [this](Bits b) { return (*this)(b); };
  }
  const EnergyFunction& function() const { return fn_; }

 private:
  EnergyFunction fn_;
  std::unordered_map<Bits, double> cache_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice protein folding with a CVaR-trained variational circuit"};
  app.name(args.empty() ? "qpsp" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from an INI file (command-line flags win)");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress messages");
  const Logger log(err, quiet);

  // instances
  auto* c_inst = app.add_subcommand("instances", "List the registered benchmark peptides");
  bool inst_csv = false;
  c_inst->add_flag("--csv", inst_csv, "Comma-separated output");

  // ground-state
  auto* c_gs = app.add_subcommand("ground-state", "Exact ground state by exhaustive search");
  ProblemFlags gs_problem;
  gs_problem.add_to(c_gs);
  std::string gs_out;
  std::string gs_cache = default_cache_dir();
  OracleOptions gs_opts;
  int gs_top = 0;
  bool gs_no_cache = false;
  c_gs->add_option("--out", gs_out, "Directory for oracle.json (default: print to stdout)");
  c_gs->add_option("--cache-dir", gs_cache, "Oracle cache directory")->capture_default_str();
  c_gs->add_flag("--no-cache", gs_no_cache, "Neither read nor write the cache");
  c_gs->add_option("--max-qubits", gs_opts.max_qubits, "Enumeration budget in qubits")->capture_default_str();
  c_gs->add_option("--node-limit", gs_opts.node_limit, "Search-node budget")->capture_default_str();
  c_gs->add_option("--time-limit", gs_opts.time_limit_s, "Wall-clock budget in seconds (0 = none)");
  c_gs->add_option("--threads", gs_opts.threads, "Worker threads (0 = all cores)");
  c_gs->add_option("--top-m", gs_top, "Also write the m lowest valid conformations to spectrum.csv");

  // train
  auto* c_train = app.add_subcommand("train", "Train the circuit with multi-restart CVaR minimization");
  ProblemFlags tr_problem;
  tr_problem.add_to(c_train);
  CvarConfig tr_cvar;
  OptimizerConfig tr_opt;
  std::string tr_out;
  std::string tr_backend = "auto";
  std::string tr_method = "cobyla";
  std::string tr_mode = "shot";
  int tr_reps = 1;
  SimOptions tr_sim;
  c_train->add_option("--out", tr_out, "Run directory")->required();
  c_train->add_option("--alpha", tr_cvar.alpha, "CVaR tail fraction")->capture_default_str();
  c_train->add_option("--train-shots,--shots", tr_cvar.shots, "Shots per cost evaluation")->capture_default_str();
  c_train->add_option("--cvar-mode", tr_mode, "shot or exact")->check(CLI::IsMember({"shot", "exact"}));
  c_train->add_option("--restarts", tr_opt.restarts, "Independent random initializations")->capture_default_str();
  c_train->add_option("--max-iter", tr_opt.max_iter, "Cost evaluations per restart")->capture_default_str();
  c_train->add_option("--seed", tr_opt.seed, "Master seed")->capture_default_str();
  c_train->add_option("--optimizer", tr_method, "cobyla or nelder-mead")
      ->check(CLI::IsMember({"cobyla", "nelder-mead"}));
  c_train->add_option("--rhobeg", tr_opt.initial_step, "Initial trust radius / simplex size")->capture_default_str();
  c_train->add_option("--tol", tr_opt.tolerance, "Final trust radius / simplex tolerance")->capture_default_str();
  c_train->add_option("--threads", tr_opt.threads, "Concurrent restarts (0 = all cores)");
  c_train->add_option("--reps", tr_reps, "Entangling repetitions")->capture_default_str();
  c_train->add_option("--backend", tr_backend, "auto, dense or mps")->check(CLI::IsMember({"auto", "dense", "mps"}));
  c_train->add_option("--bond-cap", tr_sim.bond_cap, "MPS bond-dimension cap")->capture_default_str();

  // evaluate
  auto* c_eval = app.add_subcommand("evaluate", "Re-sample trained parameters and compute metrics");
  std::string ev_run;
  std::int64_t ev_shots = 100000;
  std::optional<std::uint64_t> ev_seed;
  std::string ev_cache = default_cache_dir();
  std::string ev_oracle;
  double ev_bin = kDefaultBinWidth;
  bool ev_all = false;
  c_eval->add_option("run_dir,--run", ev_run, "Run directory written by `train`")->required();
  c_eval->add_option("--shots", ev_shots, "Shots per restart")->capture_default_str();
  c_eval->add_option("--seed", ev_seed, "Sampling seed (default: derived from the run's master seed)");
  c_eval->add_option("--cache-dir", ev_cache, "Oracle cache directory")->capture_default_str();
  c_eval->add_option("--oracle", ev_oracle, "Explicit oracle JSON instead of the cache");
  c_eval->add_option("--bin-width", ev_bin, "Histogram bin width in units of |E_gs|")->capture_default_str();
  c_eval->add_flag("--all-shots", ev_all, "Histogram every shot, not only negative-energy ones");

  // baseline
  auto* c_base = app.add_subcommand("baseline", "Uniform random-sampling baseline");
  ProblemFlags bl_problem;
  bl_problem.add_to(c_base);
  std::string bl_run;
  std::string bl_out;
  std::int64_t bl_shots = 100000;
  std::uint64_t bl_seed = 0;
  std::string bl_cache = default_cache_dir();
  std::string bl_oracle;
  double bl_bin = kDefaultBinWidth;
  bool bl_all = false;
  c_base->add_option("--run", bl_run, "Take the problem from this run directory and write into it");
  c_base->add_option("--out", bl_out, "Output directory (default: <run>/baseline or ./baseline)");
  c_base->add_option("--shots", bl_shots, "Number of uniform bitstrings")->capture_default_str();
  c_base->add_option("--seed", bl_seed, "Sampling seed")->capture_default_str();
  c_base->add_option("--cache-dir", bl_cache, "Oracle cache directory")->capture_default_str();
  c_base->add_option("--oracle", bl_oracle, "Explicit oracle JSON instead of the cache");
  c_base->add_option("--bin-width", bl_bin, "Histogram bin width in units of |E_gs|")->capture_default_str();
  c_base->add_flag("--all-shots", bl_all, "Histogram every shot, not only negative-energy ones");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c_inst->parsed()) {
      out << instances_table(inst_csv);
      return kExitOk;
    }

    if (c_gs->parsed()) {
      const ProblemSpec p = gs_problem.resolve();
      const fs::path cached = fs::path(gs_cache) / (p.oracle_key() + ".json");
      std::string doc;
      if (!gs_no_cache && fs::exists(cached)) {
        doc = read_file(cached);
        if (parse_oracle_document(doc).key != p.oracle_key()) {
          throw UsageError("oracle hash mismatch in cache file " + cached.string());
        }
        log("cache hit: " + cached.string());
      } else {
        log("enumerating " + std::to_string(p.qubits()) + "-qubit search space");
        const OracleResult r = ground_state(p.sequence, p.lattice, p.params(), gs_opts);
        doc = oracle_document(p, r);
        if (!gs_no_cache) {
          atomic_write(cached, doc);
          log("cached: " + cached.string());
        }
      }
      if (gs_out.empty()) {
        out << doc;
      } else {
        atomic_write(fs::path(gs_out) / "oracle.json", doc);
      }
      if (gs_top > 0) {
        const auto spec = low_energy_spectrum(p.sequence, p.lattice, p.params(), gs_top, gs_opts);
        std::string csv = "rank,energy,bitstring\n";
        for (std::size_t i = 0; i < spec.size(); ++i) {
          csv += std::to_string(i + 1) + "," + format_double(spec[i].energy) + "," +
                 format_bits(spec[i].bits, p.qubits()) + "\n";
        }
        atomic_write(fs::path(gs_out.empty() ? "." : gs_out) / "spectrum.csv", csv);
      }
      return kExitOk;
    }

    if (c_train->parsed()) {
      const ProblemSpec p = tr_problem.resolve();
      tr_cvar.mode = parse_cvar_mode(tr_mode);
      tr_opt.method = parse_method(tr_method);
      tr_cvar.validate();
      tr_opt.validate();
      const AnsatzSpec spec = build_ansatz(p.qubits(), tr_reps);
      tr_sim.backend = resolve_backend(tr_backend, p.qubits());
      const EnergyFunction fn(p.sequence, p.lattice, p.params());
      const fs::path dir(tr_out);

      ordered_json m;
      m["tool"] = "qpsp";
      m["version"] = "0.1.0";
      m["problem"] = problem_json(p);
      const LatticeSpec& lat = lattice(p.lattice);
      m["encoding"] = {{"qubits_per_turn", lat.qubits_per_turn()},
                       {"fixed_prefix", lat.fixed_prefix()},
                       {"bit_order", "qubit 0 is the leftmost bitstring character; the fixed prefix precedes it"}};
      m["ansatz"] = {{"type", "real_amplitudes"},
                     {"qubits", spec.m_qubits},
                     {"reps", spec.reps},
                     {"parameters", spec.parameter_count()},
                     {"gates", spec.gate_count()},
                     {"cnots", spec.cnot_count()},
                     {"gate_order",
                      "Ry layer (theta[0..M-1] on qubits 0..M-1); per repetition CNOT(i, i+1) for i = M-2 down to 0, "
                      "then Ry layer on the next M parameters"}};
      m["cvar"] = {{"alpha", tr_cvar.alpha}, {"shots", tr_cvar.shots}, {"mode", cvar_mode_name(tr_cvar.mode)}};
      std::vector<std::uint64_t> seeds;
      for (int r = 0; r < tr_opt.restarts; ++r) seeds.push_back(restart_seed(tr_opt.seed, r));
      m["optimizer"] = {{"method", method_name(tr_opt.method)},
                        {"max_iter", tr_opt.max_iter},
                        {"rhobeg", tr_opt.initial_step},
                        {"tolerance", tr_opt.tolerance},
                        {"restarts", tr_opt.restarts},
                        {"master_seed", tr_opt.seed},
                        {"restart_seeds", seeds},
                        {"init", "uniform [-pi, pi)"}};
      m["simulator"] = {{"backend", backend_name(tr_sim.backend)},
                        {"bond_cap", tr_sim.bond_cap},
                        {"truncation", tr_sim.truncation}};
      atomic_write(dir / "matrix.csv", p.matrix.to_csv());
      atomic_write(dir / "manifest.json", m.dump(2) + "\n");

      log("training " + (p.pdb_id.empty() ? p.sequence : p.pdb_id) + " on " + std::string(lattice_name(p.lattice)) +
          " (" + std::to_string(p.qubits()) + " qubits, " + std::to_string(tr_opt.restarts) + " restarts)");
      const auto res = multi_restart(Problem::from(fn), spec, tr_cvar, tr_opt, tr_sim);
      ordered_json runs = ordered_json::array();
      for (std::size_t r = 0; r < res.records.size(); ++r) {
        const auto& rec = res.records[r];
        const fs::path rd = dir / restart_dir_name(static_cast<int>(r));
        atomic_write(rd / "trace.csv", trace_csv(rec));
        atomic_write(rd / "ledger.csv", ledger_csv(rec));
        atomic_write(rd / "params.json", params_json(rec, static_cast<int>(r)));
        runs.push_back({{"restart", r},
                        {"final_cvar", rec.final_cost},
                        {"e_lowest", rec.e_lowest},
                        {"evaluations", rec.cvar_trace.size()},
                        {"termination", termination_name(rec.termination)}});
      }
      ordered_json s;
      s["restarts"] = res.records.size();
      s["final_cvar"] = res.summary.final_cvar;
      s["cvar_mean"] = res.summary.mean_cvar;
      s["cvar_stderr"] = res.summary.stderr_cvar;
      s["cvar_min"] = res.summary.min_cvar;
      s["e_lowest"] = res.summary.e_lowest;
      s["runs"] = runs;
      atomic_write(dir / "summary.json", s.dump(2) + "\n");
      out << "pooled e_lowest " << format_double(res.summary.e_lowest) << ", min CVaR "
          << format_double(res.summary.min_cvar) << ", run directory " << dir.string() << '\n';
      return kExitOk;
    }

    if (c_eval->parsed()) {
      const fs::path dir(ev_run);
      if (!fs::exists(dir / "manifest.json")) throw UsageError(dir.string() + " has no manifest.json");
      const auto m = nlohmann::json::parse(read_file(dir / "manifest.json"));
      const ProblemSpec p = problem_from_manifest(m, dir);
      if (p.oracle_key() != m.at("problem").at("oracle_key").get<std::string>()) {
        throw UsageError("manifest problem does not match its recorded oracle key");
      }
      const OracleResult gs = require_oracle(p, ev_oracle, ev_cache, log);
      const AnsatzSpec spec = build_ansatz(m.at("ansatz").at("qubits").get<int>(), m.at("ansatz").at("reps").get<int>());
      SimOptions sim;
      sim.backend = parse_backend(m.at("simulator").at("backend").get<std::string>());
      sim.bond_cap = m.at("simulator").at("bond_cap").get<int>();
      sim.truncation = m.at("simulator").at("truncation").get<double>();
      const double alpha = m.at("cvar").at("alpha").get<double>();
      const int restarts = m.at("optimizer").at("restarts").get<int>();
      const std::uint64_t seed = ev_seed ? *ev_seed : m.at("optimizer").at("master_seed").get<std::uint64_t>() ^ 0x5EEDE7A1ULL;
      if (ev_shots < 1) throw UsageError("--shots must be >= 1");

      Scorer score(p);
      const EnergyLookup lookup = score.lookup();
      std::vector<MetricsReport> reports;
      std::vector<SampleSet> all;
      for (int r = 0; r < restarts; ++r) {
        const fs::path rd = dir / restart_dir_name(r);
        const StoredParams sp = parse_params_json(read_file(rd / "params.json"));
        const SampleSet samples = simulate(spec, sp.params, sim).sample(ev_shots, restart_seed(seed, r));
        const MetricsReport rep = compute_metrics(samples, lookup, gs.e_gs, alpha, sp.e_lowest);
        const EnergyHistogram h = energy_histogram(samples, lookup, gs.e_gs, ev_bin, !ev_all);
        atomic_write(rd / "metrics.json", rep.to_json() + "\n");
        atomic_write(rd / "hist.csv", h.to_csv());
        atomic_write(rd / "samples.csv", samples_csv(samples, lookup));
        reports.push_back(rep);
        all.push_back(samples);
      }
      const PooledMetrics pooled = pool_metrics(reports);
      const SampleSet merged = merge_samples(all);
      atomic_write(dir / "metrics.json", pooled.to_json() + "\n");
      atomic_write(dir / "hist.csv", energy_histogram(merged, lookup, gs.e_gs, ev_bin, !ev_all).to_csv());
      out << "ARE mean " << format_double(pooled.mean_are) << " (stderr " << format_double(pooled.stderr_are)
          << ", min " << format_double(pooled.min_are) << "), BCRE " << format_double(pooled.pooled_bcre) << '\n';
      return kExitOk;
    }

    if (c_base->parsed()) {
      ProblemSpec p;
      fs::path dir;
      if (!bl_run.empty()) {
        const fs::path rd(bl_run);
        p = problem_from_manifest(nlohmann::json::parse(read_file(rd / "manifest.json")), rd);
        dir = bl_out.empty() ? rd / "baseline" : fs::path(bl_out);
      } else {
        p = bl_problem.resolve();
        dir = bl_out.empty() ? fs::path("baseline") : fs::path(bl_out);
      }
      if (bl_shots < 1) throw UsageError("--shots must be >= 1");
      const OracleResult gs = require_oracle(p, bl_oracle, bl_cache, log);
      Scorer score(p);
      const EnergyLookup lookup = score.lookup();
      const Baseline b = random_baseline(p.qubits(), lookup, gs.e_gs, bl_shots, bl_seed, bl_bin, !bl_all);
      ordered_json j;
      j["shots"] = bl_shots;
      j["seed"] = bl_seed;
      j["e_gs"] = gs.e_gs;
      j["valid_fraction"] = valid_fraction(b.samples, lookup);
      j["near_ground_fraction"] = near_ground_fraction(b.samples, lookup, gs.e_gs);
      j["c_cvar"] = sample_cvar(b.samples, lookup, 0.1);
      j["e_lowest"] = min_sampled_energy(b.samples, lookup);
      j["bin_width"] = bl_bin;
      atomic_write(dir / "baseline.json", j.dump(2) + "\n");
      atomic_write(dir / "hist.csv", b.histogram.to_csv());
      atomic_write(dir / "samples.csv", samples_csv(b.samples, lookup));
      out << "baseline written to " << dir.string() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CodecError& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitResource;
  } catch (const DomainError& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qpsp: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace qpsp::cli
