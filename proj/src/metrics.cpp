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

#include "qpsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>
#include <random>

#include "qpsp/cvar.hpp"
#include "qpsp/error.hpp"

namespace qpsp {

namespace {

void check_gs(double e_gs) {
  if (e_gs == 0.0 || !std::isfinite(e_gs)) throw DomainError("relative error undefined for E_gs = 0");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Spread {
  double mean = 0.0;
  double stderr_ = 0.0;
  double min = 0.0;
};

Spread spread(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  Spread s;
  const double n = static_cast<double>(v.size());
  for (double x : v) s.mean += x;
  s.mean /= n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  s.min = v.front();
  return s;
}

}  // namespace

double average_relative_error(double c_cvar, double e_gs) {
  check_gs(e_gs);
  return std::abs((c_cvar - e_gs) / e_gs);
}

double best_case_relative_error(double e_lowest, double e_gs) {
  check_gs(e_gs);
  return std::abs((e_lowest - e_gs) / e_gs);
}

std::int64_t histogram_bin(double normalized, double bin_width) {
  return static_cast<std::int64_t>(std::floor((normalized + 1.0) / bin_width + 1e-9));
}

std::string EnergyHistogram::to_csv() const {
  std::string out = "bin_left,bin_right,probability\n";
  for (std::size_t i = 0; i < probability.size(); ++i) {
    out += fmt(edges[i]) + "," + fmt(edges[i + 1]) + "," + fmt(probability[i]) + "\n";
  }
  return out;
}

EnergyHistogram energy_histogram(const SampleSet& samples, const EnergyLookup& energy, double e_gs,
                                 double bin_width, bool valid_only) {
  check_gs(e_gs);
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  if (samples.shots < 1) throw DomainError("histogram of an empty sample set");
  const double scale = std::abs(e_gs);
  std::vector<std::pair<std::int64_t, std::int64_t>> hits;
  std::int64_t lo = 0;
  std::int64_t hi = histogram_bin(0.0, bin_width) - 1;  // last bin below zero
  std::int64_t included = 0;
  for (const auto& [bits, count] : samples.counts) {
    const double e = energy(bits);
    if (valid_only && !(e < 0.0)) continue;
    const auto j = histogram_bin(e / scale, bin_width);
    hits.emplace_back(j, count);
    lo = std::min(lo, j);
    hi = std::max(hi, j);
    included += count;
  }
  EnergyHistogram h;
  h.bin_width = bin_width;
  h.valid_only = valid_only;
  const auto bins = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::int64_t> counts(bins, 0);
  for (const auto& [j, c] : hits) counts[static_cast<std::size_t>(j - lo)] += c;
  const double total = static_cast<double>(samples.shots);
  for (std::size_t i = 0; i <= bins; ++i) h.edges.push_back(-1.0 + static_cast<double>(lo + static_cast<std::int64_t>(i)) * bin_width);
  for (auto c : counts) h.probability.push_back(static_cast<double>(c) / total);
  h.included_fraction = static_cast<double>(included) / total;
  return h;
}

double sample_cvar(const SampleSet& samples, const EnergyLookup& energy, double alpha) {
  std::vector<std::pair<double, std::int64_t>> w;
  for (const auto& [bits, count] : samples.counts) w.emplace_back(energy(bits), count);
  return cvar_cost_counts(std::move(w), alpha);
}

double valid_fraction(const SampleSet& samples, const EnergyLookup& energy) {
  if (samples.shots < 1) throw DomainError("empty sample set");
  std::int64_t n = 0;
  for (const auto& [bits, count] : samples.counts) {
    if (energy(bits) < 0.0) n += count;
  }
  return static_cast<double>(n) / static_cast<double>(samples.shots);
}

double near_ground_fraction(const SampleSet& samples, const EnergyLookup& energy, double e_gs, double tolerance) {
  check_gs(e_gs);
  if (samples.shots < 1) throw DomainError("empty sample set");
  std::int64_t n = 0;
  for (const auto& [bits, count] : samples.counts) {
    if (std::abs(energy(bits) - e_gs) <= tolerance * std::abs(e_gs)) n += count;
  }
  return static_cast<double>(n) / static_cast<double>(samples.shots);
}

double min_sampled_energy(const SampleSet& samples, const EnergyLookup& energy) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [bits, count] : samples.counts) m = std::min(m, energy(bits));
  return m;
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["are"] = are;
  j["bcre"] = bcre;
  j["e_gs"] = e_gs;
  j["c_cvar"] = c_cvar;
  j["e_lowest"] = e_lowest;
  j["n_valid_fraction"] = n_valid_fraction;
  return j.dump(2);
}

MetricsReport compute_metrics(const SampleSet& samples, const EnergyLookup& energy, double e_gs, double alpha,
                              double e_lowest) {
  MetricsReport r;
  r.e_gs = e_gs;
  r.c_cvar = sample_cvar(samples, energy, alpha);
  r.e_lowest = e_lowest;
  r.are = average_relative_error(r.c_cvar, e_gs);
  r.bcre = best_case_relative_error(e_lowest, e_gs);
  r.n_valid_fraction = valid_fraction(samples, energy);
  return r;
}

std::string PooledMetrics::to_json() const {
  nlohmann::ordered_json j;
  j["runs"] = runs;
  j["are_mean"] = mean_are;
  j["are_stderr"] = stderr_are;
  j["are_min"] = min_are;
  j["bcre_mean"] = mean_bcre;
  j["bcre_stderr"] = stderr_bcre;
  j["bcre_min"] = min_bcre;
  j["e_gs"] = e_gs;
  j["e_lowest"] = e_lowest;
  j["bcre"] = pooled_bcre;
  return j.dump(2);
}

PooledMetrics pool_metrics(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw DomainError("no reports to pool");
  PooledMetrics p;
  p.runs = static_cast<int>(reports.size());
  std::vector<double> are;
  std::vector<double> bcre;
  p.e_gs = reports.front().e_gs;
  p.e_lowest = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    are.push_back(r.are);
    bcre.push_back(r.bcre);
    p.e_lowest = std::min(p.e_lowest, r.e_lowest);
  }
  const auto a = spread(are);
  const auto b = spread(bcre);
  p.mean_are = a.mean;
  p.stderr_are = a.stderr_;
  p.min_are = a.min;
  p.mean_bcre = b.mean;
  p.stderr_bcre = b.stderr_;
  p.min_bcre = b.min;
  p.pooled_bcre = best_case_relative_error(p.e_lowest, p.e_gs);
  return p;
}

SampleSet merge_samples(std::span<const SampleSet> sets) {
  SampleSet out;
  for (const auto& s : sets) {
    if (out.shots > 0 && s.width != out.width) throw DomainError("cannot merge sample sets of different widths");
    out.width = s.width;
    out.shots += s.shots;
    for (const auto& [bits, count] : s.counts) out.counts[bits] += count;
  }
  return out;
}

SampleSet random_samples(int width, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw DomainError("shots must be >= 1");
  if (width < 1 || width > kMaxPackedWidth) throw DomainError("width out of range");
  std::mt19937_64 rng(seed);
  SampleSet s;
  s.width = width;
  s.shots = shots;
  s.seed = seed;
  for (std::int64_t i = 0; i < shots; ++i) s.counts[rng() >> (64 - width)] += 1;
  return s;
}

Baseline random_baseline(int width, const EnergyLookup& energy, double e_gs, std::int64_t shots, std::uint64_t seed,
                         double bin_width, bool valid_only) {
  Baseline b;
  b.samples = random_samples(width, shots, seed);
  b.histogram = energy_histogram(b.samples, energy, e_gs, bin_width, valid_only);
  return b;
}

}  // namespace qpsp
