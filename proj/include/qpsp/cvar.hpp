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
#include <span>
#include <utility>
#include <vector>

namespace qpsp {

// Number of lowest samples averaged out of `total`: ceil(alpha * total),
// at least 1.  A 1e-9 slack absorbs products such as 0.3 * 10.
std::int64_t cvar_tail_size(double alpha, std::int64_t total);

// Mean of the ceil(alpha * S) smallest values (each sample counted once).
// Throws DomainError on empty input or alpha outside (0, 1].
double cvar_cost(std::span<const double> energies, double alpha);

// Same statistic over (energy, multiplicity) pairs.
double cvar_cost_counts(std::vector<std::pair<double, std::int64_t>> weighted, double alpha);

// Probability-weighted tail of measure alpha over (energy, probability)
// pairs; the boundary state contributes fractionally.
double cvar_cost_distribution(std::vector<std::pair<double, double>> weighted, double alpha);

}  // namespace qpsp
