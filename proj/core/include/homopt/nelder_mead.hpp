// Copyright 2026 The HomOpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMOPT_NELDER_MEAD_HPP_
#define HOMOPT_NELDER_MEAD_HPP_

#include <functional>

#include "homopt/search_space.hpp"

namespace homopt {

struct NmConfig {
  int max_iter = 0;           // 0 means 200 * dim
  double x_tol = 1e-6;        // simplex diameter threshold
  double f_tol = 1e-9;        // vertex value spread threshold
  double reflection = 1.0;    // alpha > 0
  double expansion = 2.0;     // gamma > 1
  double contraction = 0.5;   // rho in (0, 1)
  double shrink = 0.5;        // sigma in (0, 1)
  double initial_step = 0.05; // fraction of box width per dimension
};

struct NmResult {
  ParamVector x_min;
  double f_min = 0.0;
  int iterations = 0;
  bool converged = false;
};

using NmObjective = std::function<double(const ParamVector&)>;

/// Invoked once per iteration with the current best vertex.
using NmCallback = std::function<void(int iteration, const ParamVector& best_x, double best_f)>;

/// Box-constrained Nelder-Mead. Every candidate vertex is clamped onto the
/// box before evaluation; the initial simplex offsets x0 by
/// initial_step * (hi - lo) along each axis, flipped inward at the boundary.
/// Axes with zero box width are frozen at their only feasible value.
/// Returns the best point ever evaluated; deterministic for identical inputs.
/// Throws SolverError when x0 lies outside the box or the objective returns
/// a non-finite value.
NmResult nelder_mead_minimize(const NmObjective& objective, const ParamVector& x0,
                              const Box& box, const NmConfig& config = {},
                              const NmCallback& callback = {});

}  // namespace homopt

#endif  // HOMOPT_NELDER_MEAD_HPP_
