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
#include <span>
#include <string>
#include <vector>

#include "qpsp/bits.hpp"
#include "qpsp/circuit.hpp"

namespace qpsp {

using EnergyLookup = std::function<double(Bits)>;

// |(c_cvar - e_gs) / e_gs|; DomainError when e_gs is zero.
double average_relative_error(double c_cvar, double e_gs);
// |(e_lowest - e_gs) / e_gs|; DomainError when e_gs is zero.
double best_case_relative_error(double e_lowest, double e_gs);

inline constexpr double kDefaultBinWidth = 0.05;

// Per-shot histogram of E / |E_gs| on a grid anchored at -1.
struct EnergyHistogram {
  double bin_width = kDefaultBinWidth;
  bool valid_only = true;
  std::vector<double> edges;        // bins + 1 entries
  std::vector<double> probability;  // fraction of all shots
  double included_fraction = 0.0;

  // bin_left,bin_right,probability
  std::string to_csv() const;
};

// Grid index of a normalized energy.
std::int64_t histogram_bin(double normalized, double bin_width);

EnergyHistogram energy_histogram(const SampleSet& samples, const EnergyLookup& energy, double e_gs,
                                 double bin_width = kDefaultBinWidth, bool valid_only = true);

// Shot-weighted CVaR of a sample set.
double sample_cvar(const SampleSet& samples, const EnergyLookup& energy, double alpha);

// Share of shots with negative total energy.
double valid_fraction(const SampleSet& samples, const EnergyLookup& energy);

// Share of shots within `tolerance` * |e_gs| of the ground-state energy.
double near_ground_fraction(const SampleSet& samples, const EnergyLookup& energy, double e_gs,
                            double tolerance = 0.2);

double min_sampled_energy(const SampleSet& samples, const EnergyLookup& energy);

struct MetricsReport {
  double are = 0.0;
  double bcre = 0.0;
  double e_gs = 0.0;
  double c_cvar = 0.0;
  double e_lowest = 0.0;
  double n_valid_fraction = 0.0;

  std::string to_json() const;
};

// ARE from the sample set's CVaR, BCRE from `e_lowest` (the lowest energy
// seen during training).
MetricsReport compute_metrics(const SampleSet& samples, const EnergyLookup& energy, double e_gs, double alpha,
                              double e_lowest);

struct PooledMetrics {
  int runs = 0;
  double mean_are = 0.0;
  double stderr_are = 0.0;
  double min_are = 0.0;
  double mean_bcre = 0.0;
  double stderr_bcre = 0.0;
  double min_bcre = 0.0;
  double e_gs = 0.0;
  double e_lowest = 0.0;
  double pooled_bcre = 0.0;

  std::string to_json() const;
};

PooledMetrics pool_metrics(std::span<const MetricsReport> reports);

SampleSet merge_samples(std::span<const SampleSet> sets);

// Uniform i.i.d. bitstrings of the given width.
SampleSet random_samples(int width, std::int64_t shots, std::uint64_t seed);

struct Baseline {
  SampleSet samples;
  EnergyHistogram histogram;
};

Baseline random_baseline(int width, const EnergyLookup& energy, double e_gs, std::int64_t shots, std::uint64_t seed,
                         double bin_width = kDefaultBinWidth, bool valid_only = true);

}  // namespace qpsp
