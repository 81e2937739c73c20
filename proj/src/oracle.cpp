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

#include "qpsp/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <json.hpp>
#include <thread>

#include "qpsp/error.hpp"

namespace qpsp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kWindow = 1e-6;
constexpr double kTie = 1e-9;

// Keeps every leaf that can still be among the m lowest once rounding in
// the incremental sums is allowed for.
class Collector {
 public:
  explicit Collector(std::size_t m) : m_(std::max<std::size_t>(m, 1)), next_compact_(4 * m_ + 1024) {}

  void add(double e, Bits b) {
    if (e > threshold_ + kWindow) return;
    items_.emplace_back(e, b);
    if (items_.size() >= next_compact_) {
      compact();
      next_compact_ = std::max(4 * m_ + 1024, 2 * items_.size());
    }
  }

  void merge(const Collector& other) {
    for (const auto& [e, b] : other.items_) add(e, b);
  }

  void compact() {
    if (items_.size() < m_) return;
    std::nth_element(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(m_ - 1), items_.end());
    threshold_ = std::min(threshold_, items_[m_ - 1].first);
    std::erase_if(items_, [&](const auto& it) { return it.first > threshold_ + kWindow; });
  }

  const std::vector<std::pair<double, Bits>>& items() const { return items_; }

 private:
  std::size_t m_;
  std::size_t next_compact_;
  double threshold_ = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, Bits>> items_;
};

struct Stats {
  std::int64_t leaves = 0;
  std::int64_t pruned = 0;
  std::int64_t nodes = 0;
};

// Shared, read-only description of the search.
struct SearchSpace {
  const LatticeSpec* lat = nullptr;
  int n = 0;
  int width = 0;
  int q = 0;
  int first_partner = 1;
  std::vector<unsigned> fixed_part;  // per turn
  std::vector<int> free_bits;        // per turn
  std::vector<int> free_after;       // free bits in turns > t
  std::vector<int> shells;
  std::vector<double> scales;
  std::vector<double> eps;  // n x n pair energies for this sequence

  SearchSpace(std::string_view sequence, LatticeKind kind, const EnergyParams& params) {
    lat = &lattice(kind);
    n = static_cast<int>(sequence.size());
    width = qubit_count(kind, n);
    q = lat->qubits_per_turn();
    first_partner = params.exclude_bonded ? 2 : 1;
    const std::string_view prefix = lat->fixed_prefix();
    const int turns = n - 1;
    fixed_part.assign(static_cast<std::size_t>(turns), 0);
    free_bits.assign(static_cast<std::size_t>(turns), 0);
    for (int t = 0; t < turns; ++t) {
      int nfixed = 0;
      unsigned v = 0;
      for (int b = 0; b < q; ++b) {
        const auto raw = static_cast<std::size_t>(t * q + b);
        if (raw < prefix.size()) {
          v = (v << 1) | static_cast<unsigned>(prefix[raw] == '1');
          ++nfixed;
        }
      }
      fixed_part[static_cast<std::size_t>(t)] = v;
      free_bits[static_cast<std::size_t>(t)] = q - nfixed;
    }
    free_after.assign(static_cast<std::size_t>(turns), 0);
    for (int t = turns - 2; t >= 0; --t) {
      free_after[static_cast<std::size_t>(t)] =
          free_after[static_cast<std::size_t>(t + 1)] + free_bits[static_cast<std::size_t>(t + 1)];
    }
    const double d1 = lat->knn_distance(1);
    for (int k = 1; k <= params.max_k; ++k) {
      shells.push_back(lat->knn_squared(k));
      scales.push_back(d1 / lat->knn_distance(k));
    }
    std::vector<int> idx;
    for (char c : sequence) idx.push_back(params.contact.index(c));
    eps.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        eps[static_cast<std::size_t>(i * n + j)] =
            params.contact.at(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
    }
  }
};

class Search {
 public:
  Search(const SearchSpace& space, Collector& out, Stats& stats, const OracleOptions& options,
         std::atomic<std::int64_t>& global_nodes, Clock::time_point deadline)
      : s_(space), out_(out), stats_(stats), opts_(options), global_nodes_(global_nodes), deadline_(deadline) {
    coords_.resize(static_cast<std::size_t>(s_.n));
  }

  // Descends from turn t with beads 0..t placed.
  void descend(int t, Bits acc, double energy) {
    if (t == s_.n - 1) {
      ++stats_.leaves;
      out_.add(energy, acc);
      return;
    }
    charge_node();
    const auto ut = static_cast<std::size_t>(t);
    const int fb = s_.free_bits[ut];
    for (unsigned v = 0; v < (1u << fb); ++v) {
      const unsigned pattern = (s_.fixed_part[ut] << fb) | v;
      const Bits next_acc = (acc << fb) | v;
      const auto entry = s_.lat->lookup(t, pattern);
      if (!entry) {
        stats_.pruned += std::int64_t{1} << s_.free_after[ut];
        continue;
      }
      const int j = t + 1;
      const Vec3 p = coords_[ut] + entry->step;
      double added = 0.0;
      bool clash = false;
      for (int i = 0; i < j; ++i) {
        const int d2 = (p - coords_[static_cast<std::size_t>(i)]).norm2();
        if (d2 == 0) {
          clash = true;
          break;
        }
        if (j - i < s_.first_partner) continue;
        for (std::size_t k = 0; k < s_.shells.size(); ++k) {
          if (d2 == s_.shells[k]) added += s_.eps[static_cast<std::size_t>(i * s_.n + j)] * s_.scales[k];
        }
      }
      if (clash) {
        stats_.pruned += std::int64_t{1} << s_.free_after[ut];
        continue;
      }
      coords_[static_cast<std::size_t>(j)] = p;
      descend(j, next_acc, energy + added);
    }
  }

  // Places the first `t` turns from a partial bitstring; false when that
  // prefix is already invalid.
  bool seed(int t, Bits acc) {
    int shift = 0;
    for (int u = t - 1; u >= 0; --u) shift += s_.free_bits[static_cast<std::size_t>(u)];
    coords_[0] = {0, 0, 0};
    for (int u = 0; u < t; ++u) {
      const auto uu = static_cast<std::size_t>(u);
      const int fb = s_.free_bits[uu];
      shift -= fb;
      const unsigned v = static_cast<unsigned>((acc >> shift) & ((Bits{1} << fb) - 1));
      const auto entry = s_.lat->lookup(u, (s_.fixed_part[uu] << fb) | v);
      if (!entry) return false;
      coords_[uu + 1] = coords_[uu] + entry->step;
      for (int i = 0; i <= u; ++i) {
        if (coords_[static_cast<std::size_t>(i)] == coords_[uu + 1]) return false;
      }
    }
    return true;
  }

  double prefix_energy(int t) const {
    double e = 0.0;
    for (int j = 1; j <= t; ++j) {
      for (int i = 0; i + s_.first_partner <= j; ++i) {
        const int d2 = (coords_[static_cast<std::size_t>(j)] - coords_[static_cast<std::size_t>(i)]).norm2();
        for (std::size_t k = 0; k < s_.shells.size(); ++k) {
          if (d2 == s_.shells[k]) e += s_.eps[static_cast<std::size_t>(i * s_.n + j)] * s_.scales[k];
        }
      }
    }
    return e;
  }

 private:
  void charge_node() {
    ++stats_.nodes;
    const auto total = global_nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (total > opts_.node_limit) {
      throw ResourceError("ground-state search exceeded the node budget of " + std::to_string(opts_.node_limit));
    }
    if (opts_.time_limit_s > 0.0 && total % 4096 == 0 && Clock::now() > deadline_) {
      throw ResourceError("ground-state search exceeded the time budget of " +
                          std::to_string(opts_.time_limit_s) + " s");
    }
  }

  const SearchSpace& s_;
  Collector& out_;
  Stats& stats_;
  const OracleOptions& opts_;
  std::atomic<std::int64_t>& global_nodes_;
  Clock::time_point deadline_;
  std::vector<Vec3> coords_;
};

struct Scored {
  std::vector<SpectrumEntry> entries;  // exact energies, ascending, ties by bits
  Stats stats;
  int width = 0;
};

Scored run_search(std::string_view sequence, LatticeKind kind, const EnergyParams& params, std::size_t m,
                  const OracleOptions& options) {
  params.validate(kind);
  check_sequence(sequence, params.contact);
  const int width = qubit_count(kind, static_cast<int>(sequence.size()));
  if (width > options.max_qubits || width > kMaxPackedWidth) {
    throw ResourceError("instance needs " + std::to_string(width) + " qubits; enumeration budget is " +
                        std::to_string(options.max_qubits));
  }
  const SearchSpace space(sequence, kind, params);
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit_s));
  std::atomic<std::int64_t> nodes{0};

  // Split at the shallowest turn offering at least a few branches per worker.
  const int turns = space.n - 1;
  int split = 0;
  int split_bits = 0;
  while (split < turns && split_bits < 6) split_bits += space.free_bits[static_cast<std::size_t>(split++)];
  const std::size_t tasks = std::size_t{1} << split_bits;

  std::vector<Collector> parts(tasks, Collector(m));
  std::vector<Stats> stats(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task; (task = next.fetch_add(1)) < tasks;) {
      try {
        Search search(space, parts[task], stats[task], options, nodes, deadline);
        if (!search.seed(split, static_cast<Bits>(task))) {
          stats[task].pruned += std::int64_t{1} << (width - split_bits);
          continue;
        }
        search.descend(split, static_cast<Bits>(task), search.prefix_energy(split));
      } catch (...) {
        errors[task] = std::current_exception();
        next.store(tasks);
      }
    }
  };
  const unsigned hw = options.threads > 0 ? static_cast<unsigned>(options.threads) : std::thread::hardware_concurrency();
  const auto nthreads = std::clamp<std::size_t>(hw, 1, tasks);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Collector all(m);
  Scored out;
  out.width = width;
  for (std::size_t i = 0; i < tasks; ++i) {
    all.merge(parts[i]);
    out.stats.leaves += stats[i].leaves;
    out.stats.pruned += stats[i].pruned;
    out.stats.nodes += stats[i].nodes;
  }
  if (out.stats.leaves == 0) throw Error("no valid conformation exists for this chain");
  all.compact();

  const EnergyFunction fn(std::string(sequence), kind, params);
  for (const auto& [approx, bits] : all.items()) out.entries.push_back({fn(bits), bits});
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.bits < b.bits;
  });
  return out;
}

}  // namespace

std::vector<std::string> OracleResult::argmin_bitstrings() const {
  std::vector<std::string> out;
  for (Bits b : argmin) out.push_back(format_bits(b, width));
  return out;
}

std::string OracleResult::to_json() const {
  nlohmann::ordered_json j;
  j["e_gs"] = e_gs;
  j["argmin_bitstrings"] = argmin_bitstrings();
  j["states_enumerated"] = states_enumerated;
  j["states_pruned"] = states_pruned;
  j["wall_time"] = wall_time_s;
  return j.dump(2);
}

OracleResult OracleResult::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    OracleResult r;
    r.e_gs = j.at("e_gs").get<double>();
    for (const auto& s : j.at("argmin_bitstrings")) {
      const auto str = s.get<std::string>();
      r.width = static_cast<int>(str.size());
      r.argmin.push_back(parse_bits(str));
    }
    r.states_enumerated = j.at("states_enumerated").get<std::int64_t>();
    r.states_pruned = j.at("states_pruned").get<std::int64_t>();
    r.wall_time_s = j.value("wall_time", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed oracle JSON: ") + e.what());
  }
}

OracleResult ground_state(std::string_view sequence, LatticeKind kind, const EnergyParams& params,
                          const OracleOptions& options) {
  const auto start = Clock::now();
  const Scored s = run_search(sequence, kind, params, 1, options);
  OracleResult r;
  r.width = s.width;
  r.e_gs = s.entries.front().energy;
  for (const auto& e : s.entries) {
    if (e.energy <= r.e_gs + kTie) r.argmin.push_back(e.bits);
  }
  std::sort(r.argmin.begin(), r.argmin.end());
  r.states_enumerated = s.stats.leaves;
  r.states_pruned = s.stats.pruned;
  r.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

OracleResult naive_enumerate(std::string_view sequence, LatticeKind kind, const EnergyParams& params,
                             int max_qubits) {
  const auto start = Clock::now();
  params.validate(kind);
  check_sequence(sequence, params.contact);
  const int width = qubit_count(kind, static_cast<int>(sequence.size()));
  if (width > max_qubits) {
    throw ResourceError("naive enumeration of " + std::to_string(width) + " qubits exceeds the limit of " +
                        std::to_string(max_qubits));
  }
  OracleResult r;
  r.width = width;
  r.e_gs = std::numeric_limits<double>::infinity();
  const Bits count = Bits{1} << width;
  std::vector<double> energies(count);
  for (Bits b = 0; b < count; ++b) {
    energies[b] = total_energy(format_bits(b, width), sequence, kind, params).e_total;
    r.e_gs = std::min(r.e_gs, energies[b]);
  }
  for (Bits b = 0; b < count; ++b) {
    if (energies[b] <= r.e_gs + kTie) r.argmin.push_back(b);
  }
  r.states_enumerated = static_cast<std::int64_t>(count);
  r.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::vector<SpectrumEntry> low_energy_spectrum(std::string_view sequence, LatticeKind kind,
                                               const EnergyParams& params, int top_m,
                                               const OracleOptions& options) {
  if (top_m < 1) throw ParameterError("top_m must be >= 1");
  Scored s = run_search(sequence, kind, params, static_cast<std::size_t>(top_m), options);
  if (s.entries.size() > static_cast<std::size_t>(top_m)) s.entries.resize(static_cast<std::size_t>(top_m));
  return s.entries;
}

}  // namespace qpsp
