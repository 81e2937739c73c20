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

#include "qpsp/cvar.hpp"

#include <algorithm>
#include <cmath>

#include "qpsp/error.hpp"

namespace qpsp {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("CVaR alpha must lie in (0, 1]");
}

}  // namespace

std::int64_t cvar_tail_size(double alpha, std::int64_t total) {
  check_alpha(alpha);
  const auto m = static_cast<std::int64_t>(std::ceil(alpha * static_cast<double>(total) - 1e-9));
  return std::clamp<std::int64_t>(m, 1, total);
}

double cvar_cost(std::span<const double> energies, double alpha) {
  if (energies.empty()) throw DomainError("CVaR of an empty sample");
  const auto m = cvar_tail_size(alpha, static_cast<std::int64_t>(energies.size()));
  std::vector<double> sorted(energies.begin(), energies.end());
  std::partial_sort(sorted.begin(), sorted.begin() + m, sorted.end());
  double sum = 0.0;
  for (std::int64_t i = 0; i < m; ++i) sum += sorted[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(m);
}

double cvar_cost_counts(std::vector<std::pair<double, std::int64_t>> weighted, double alpha) {
  std::int64_t total = 0;
  for (const auto& [e, c] : weighted) {
    if (c < 0) throw DomainError("negative sample multiplicity");
    total += c;
  }
  if (total == 0) throw DomainError("CVaR of an empty sample");
  const auto m = cvar_tail_size(alpha, total);
  std::sort(weighted.begin(), weighted.end());
  double sum = 0.0;
  std::int64_t taken = 0;
  for (const auto& [e, c] : weighted) {
    const auto use = std::min(c, m - taken);
    sum += e * static_cast<double>(use);
    taken += use;
    if (taken == m) break;
  }
  return sum / static_cast<double>(m);
}

double cvar_cost_distribution(std::vector<std::pair<double, double>> weighted, double alpha) {
  check_alpha(alpha);
  if (weighted.empty()) throw DomainError("CVaR of an empty distribution");
  std::sort(weighted.begin(), weighted.end());
  double mass = 0.0;
  double total = 0.0;
  for (const auto& [e, p] : weighted) total += p;
  if (!(total > 0.0)) throw DomainError("CVaR of a zero-mass distribution");
  const double target = alpha * total;
  double sum = 0.0;
  for (const auto& [e, p] : weighted) {
    const double use = std::min(p, target - mass);
    if (use <= 0.0) break;
    sum += e * use;
    mass += use;
  }
  return sum / mass;
}

}  // namespace qpsp
