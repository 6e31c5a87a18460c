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

#ifndef HOMOPT_HOMOTOPY_HPP_
#define HOMOPT_HOMOTOPY_HPP_

#include <vector>

#include "homopt/gam.hpp"
#include "homopt/nelder_mead.hpp"
#include "homopt/search_space.hpp"

namespace homopt {

struct HomotopyConfig {
  int n_steps = 5;  // minimizations along the blend interval
  NmConfig nm;
};

/// Minimizer sequence x^(0)..x^(N) with the blend parameter stepping from
/// 1 down to 0 in uniform increments.
struct HomotopyPath {
  std::vector<ParamVector> points;
  std::vector<double> t_values;
};

/// The linear blend t * f(x) + (1 - t) * g(x). Exactly f at t = 1 and
/// exactly g at t = 0 in floating point. Throws DomainError when t is
/// outside [0, 1] or the surrogates disagree on dimension.
double eval_homotopy(const GamSurrogate& f, const GamSurrogate& g, const ParamVector& x,
                     double t);

/// Tracks a minimizer of the blend from t = 1 to t = 0: each step lowers t
/// by 1/n_steps and warm-starts Nelder-Mead from the previous minimizer.
/// Returns the whole path (n_steps + 1 points, all inside the box).
HomotopyPath track_path(const GamSurrogate& f, const GamSurrogate& g,
                        const ParamVector& x0, const Box& box,
                        const HomotopyConfig& config = {});

}  // namespace homopt

#endif  // HOMOPT_HOMOTOPY_HPP_
