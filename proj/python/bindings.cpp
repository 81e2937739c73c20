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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpsp/circuit.hpp"
#include "qpsp/contact_matrix.hpp"
#include "qpsp/cvar.hpp"
#include "qpsp/energy.hpp"
#include "qpsp/error.hpp"
#include "qpsp/lattice.hpp"
#include "qpsp/metrics.hpp"
#include "qpsp/optimizer.hpp"
#include "qpsp/oracle.hpp"
#include "qpsp/registry.hpp"

namespace py = pybind11;
using namespace qpsp;

namespace {

EnergyParams make_params(const std::string& sequence, LatticeKind kind, int knn, bool exclude_bonded,
                         std::optional<double> lambda_olap, std::optional<double> lambda_redun,
                         std::optional<ContactMatrix> matrix) {
  EnergyParams p = default_params(matrix ? *matrix : ContactMatrix::miyazawa_jernigan(),
                                  static_cast<int>(sequence.size()), knn, exclude_bonded);
  if (lambda_olap) p.lambda_olap = *lambda_olap;
  if (lambda_redun) p.lambda_redun = *lambda_redun;
  p.validate(kind);
  return p;
}

py::dict oracle_dict(const OracleResult& r) {
  py::dict d;
  d["e_gs"] = r.e_gs;
  d["argmin_bitstrings"] = r.argmin_bitstrings();
  d["states_enumerated"] = r.states_enumerated;
  d["states_pruned"] = r.states_pruned;
  d["wall_time"] = r.wall_time_s;
  return d;
}

std::map<std::string, std::int64_t> counts_dict(const SampleSet& s) {
  std::map<std::string, std::int64_t> out;
  for (const auto& [bits, c] : s.counts) out[format_bits(bits, s.width)] = c;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice protein folding with a CVaR-trained real-amplitude circuit";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CodecError>(m, "CodecError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::enum_<LatticeKind>(m, "Lattice")
      .value("TETRA", LatticeKind::kTetra)
      .value("BCC", LatticeKind::kBcc)
      .value("FCC", LatticeKind::kFcc);
  py::enum_<Backend>(m, "Backend").value("DENSE", Backend::kDense).value("MPS", Backend::kMps);

  m.def("parse_lattice", [](const std::string& s) { return parse_lattice(s); });
  m.def("qubit_count", &qubit_count, py::arg("lattice"), py::arg("n"));
  m.def("knn_distance", py::overload_cast<LatticeKind, int>(&knn_distance), py::arg("lattice"), py::arg("k"));

  m.def(
      "decode",
      [](const std::string& bits, LatticeKind kind, int n) {
        const auto turns = decode_bitstring(bits, kind, n);
        const auto conf = to_conformation(turns);
        std::vector<std::tuple<int, int, int>> coords;
        for (const auto& c : conf.coords) coords.emplace_back(c.x, c.y, c.z);
        py::dict d;
        d["labels"] = turns.labels();
        d["coords"] = coords;
        d["redundant"] = turns.redundant_count();
        return d;
      },
      py::arg("bits"), py::arg("lattice"), py::arg("n"), "Turn labels and bead coordinates of a bitstring");
  m.def(
      "encode",
      [](const std::vector<int>& labels, LatticeKind kind, int n) { return encode_turns(labels, kind, n); },
      py::arg("labels"), py::arg("lattice"), py::arg("n"));

  py::class_<ContactMatrix>(m, "ContactMatrix")
      .def_static("miyazawa_jernigan", &ContactMatrix::miyazawa_jernigan)
      .def_static("from_csv", [](const std::string& text) { return ContactMatrix::from_csv(text); })
      .def_static("uniform", &ContactMatrix::uniform, py::arg("residues"), py::arg("value"))
      .def("__call__", [](const ContactMatrix& c, char a, char b) { return c(a, b); })
      .def("to_csv", &ContactMatrix::to_csv);

  py::class_<EnergyParams>(m, "EnergyParams")
      .def_readonly("lambda_olap", &EnergyParams::lambda_olap)
      .def_readonly("lambda_redun", &EnergyParams::lambda_redun)
      .def_readonly("max_k", &EnergyParams::max_k)
      .def_readonly("exclude_bonded", &EnergyParams::exclude_bonded);

  m.def("energy_params", &make_params, py::arg("sequence"), py::arg("lattice"), py::arg("knn") = 1,
        py::arg("exclude_bonded") = false, py::arg("lambda_olap") = py::none(), py::arg("lambda_redun") = py::none(),
        py::arg("matrix") = py::none());

  m.def(
      "total_energy",
      [](const std::string& bits, const std::string& seq, LatticeKind kind, const EnergyParams& p) {
        const auto b = total_energy(bits, seq, kind, p);
        py::dict d;
        d["e_olap"] = b.e_olap;
        d["e_int"] = b.e_int;
        d["e_redun"] = b.e_redun;
        d["e_total"] = b.e_total;
        d["per_k"] = b.per_k;
        return d;
      },
      py::arg("bits"), py::arg("sequence"), py::arg("lattice"), py::arg("params"));

  m.def(
      "ground_state",
      [](const std::string& seq, LatticeKind kind, const EnergyParams& p, int max_qubits) {
        OracleOptions o;
        o.max_qubits = max_qubits;
        OracleResult r;
        {
          py::gil_scoped_release release;
          r = ground_state(seq, kind, p, o);
        }
        return oracle_dict(r);
      },
      py::arg("sequence"), py::arg("lattice"), py::arg("params"), py::arg("max_qubits") = 30);
  m.def(
      "naive_enumerate",
      [](const std::string& seq, LatticeKind kind, const EnergyParams& p) {
        return oracle_dict(naive_enumerate(seq, kind, p));
      },
      py::arg("sequence"), py::arg("lattice"), py::arg("params"));
  m.def(
      "low_energy_spectrum",
      [](const std::string& seq, LatticeKind kind, const EnergyParams& p, int top_m) {
        const int width = qubit_count(kind, static_cast<int>(seq.size()));
        std::vector<std::pair<double, std::string>> out;
        for (const auto& e : low_energy_spectrum(seq, kind, p, top_m)) out.emplace_back(e.energy, format_bits(e.bits, width));
        return out;
      },
      py::arg("sequence"), py::arg("lattice"), py::arg("params"), py::arg("top_m"));

  m.def(
      "exact_distribution",
      [](int m_qubits, int reps, const std::vector<double>& theta, Backend backend) {
        SimOptions o;
        o.backend = backend;
        return simulate(build_ansatz(m_qubits, reps), theta, o).exact_distribution();
      },
      py::arg("qubits"), py::arg("reps"), py::arg("theta"), py::arg("backend") = Backend::kDense,
      "Probabilities indexed by the packed bitstring (qubit 0 most significant)");
  m.def(
      "sample",
      [](int m_qubits, int reps, const std::vector<double>& theta, std::int64_t shots, std::uint64_t seed,
         Backend backend) {
        SimOptions o;
        o.backend = backend;
        return counts_dict(simulate(build_ansatz(m_qubits, reps), theta, o).sample(shots, seed));
      },
      py::arg("qubits"), py::arg("reps"), py::arg("theta"), py::arg("shots"), py::arg("seed"),
      py::arg("backend") = Backend::kDense);

  m.def(
      "cvar_cost", [](const std::vector<double>& e, double alpha) { return cvar_cost(e, alpha); }, py::arg("energies"),
      py::arg("alpha"));
  m.def("average_relative_error", &average_relative_error, py::arg("c_cvar"), py::arg("e_gs"));
  m.def("best_case_relative_error", &best_case_relative_error, py::arg("e_lowest"), py::arg("e_gs"));

  m.def(
      "train",
      [](const std::string& seq, LatticeKind kind, const EnergyParams& p, int restarts, int max_iter,
         std::uint64_t seed, double alpha, std::int64_t shots, int reps, const std::string& method) {
        const EnergyFunction fn(seq, kind, p);
        CvarConfig c;
        c.alpha = alpha;
        c.shots = shots;
        OptimizerConfig o;
        o.restarts = restarts;
        o.max_iter = max_iter;
        o.seed = seed;
        o.method = parse_method(method);
        const AnsatzSpec spec = build_ansatz(fn.qubits(), reps);
        SimOptions sim;
        sim.backend = fn.qubits() <= 20 ? Backend::kDense : Backend::kMps;
        MultiRestartResult res;
        {
          py::gil_scoped_release release;
          res = multi_restart(Problem::from(fn), spec, c, o, sim);
        }
        py::list runs;
        for (const auto& r : res.records) {
          py::dict d;
          d["seed"] = r.seed;
          d["params"] = r.best_params;
          d["final_cvar"] = r.final_cost;
          d["e_lowest"] = r.e_lowest;
          d["cvar_trace"] = r.cvar_trace;
          d["ledger_size"] = r.ledger.size();
          d["termination"] = std::string(termination_name(r.termination));
          runs.append(d);
        }
        py::dict summary;
        summary["final_cvar"] = res.summary.final_cvar;
        summary["mean_cvar"] = res.summary.mean_cvar;
        summary["stderr_cvar"] = res.summary.stderr_cvar;
        summary["min_cvar"] = res.summary.min_cvar;
        summary["e_lowest"] = res.summary.e_lowest;
        py::dict out;
        out["runs"] = runs;
        out["summary"] = summary;
        return out;
      },
      py::arg("sequence"), py::arg("lattice"), py::arg("params"), py::arg("restarts") = 10,
      py::arg("max_iter") = 5000, py::arg("seed") = 0, py::arg("alpha") = 0.1, py::arg("shots") = 1000,
      py::arg("reps") = 1, py::arg("method") = "cobyla");

  m.def("instances", [] {
    std::vector<py::dict> out;
    for (const auto& inst : instances()) {
      py::dict d;
      d["pdb_id"] = std::string(inst.pdb_id);
      d["sequence"] = std::string(inst.sequence);
      d["n"] = inst.n();
      py::dict q;
      for (auto k : {LatticeKind::kTetra, LatticeKind::kBcc, LatticeKind::kFcc}) {
        if (inst.supports(k)) q[py::str(std::string(lattice_name(k)))] = qubit_count(k, inst.n());
      }
      d["qubits"] = q;
      out.push_back(d);
    }
    return out;
  });
}
