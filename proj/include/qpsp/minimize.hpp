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

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace qpsp {

enum class Termination { kConverged, kMaxIter };

std::string_view termination_name(Termination t);

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
  double initial_step = 1.0;  // trust radius (COBYLA) or simplex edge (Nelder-Mead)
  double tolerance = 1e-6;    // final trust radius, or simplex size/spread
  int max_evaluations = 5000;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  Termination termination = Termination::kMaxIter;
};

// Powell's linear-approximation trust-region method without constraints.
MinimizeResult minimize_cobyla(const Objective& f, std::vector<double> x0,
                               const MinimizeOptions& options);

MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                    const MinimizeOptions& options);

}  // namespace qpsp
