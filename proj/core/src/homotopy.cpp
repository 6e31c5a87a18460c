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

#include "homopt/homotopy.hpp"

#include <algorithm>

#include "homopt/errors.hpp"

namespace homopt {

double eval_homotopy(const GamSurrogate& f, const GamSurrogate& g, const ParamVector& x,
                     double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("homotopy parameter t must lie in [0, 1]");
  if (f.dim() != g.dim())
    throw DomainError("homotopy surrogates must share a dimension");
  return t * f.predict(x) + (1.0 - t) * g.predict(x);
}

HomotopyPath track_path(const GamSurrogate& f, const GamSurrogate& g,
                        const ParamVector& x0, const Box& box,
                        const HomotopyConfig& config) {
  if (config.n_steps < 1) throw ConfigError("homotopy: n_steps must be >= 1");
  if (f.dim() != g.dim())
    throw DomainError("homotopy surrogates must share a dimension");

  const int n = config.n_steps;
  HomotopyPath path;
  path.points.reserve(static_cast<std::size_t>(n) + 1);
  path.t_values.reserve(static_cast<std::size_t>(n) + 1);

  ParamVector current(x0);
  for (std::size_t j = 0; j < current.size(); ++j)
    current[j] = std::clamp(current[j], box.lo[j], box.hi[j]);
  path.points.push_back(current);
  path.t_values.push_back(1.0);

  for (int k = 1; k <= n; ++k) {
    // k/n accumulated as a single division keeps the endpoints exact
    const double t = static_cast<double>(n - k) / static_cast<double>(n);
    const auto blend = [&](const ParamVector& x) { return eval_homotopy(f, g, x, t); };
    const NmResult step = nelder_mead_minimize(blend, current, box, config.nm);
    current = step.x_min;
    path.points.push_back(current);
    path.t_values.push_back(t);
  }
  return path;
}

}  // namespace homopt
