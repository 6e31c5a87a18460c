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

#ifndef HOMOPT_OBJECTIVES_HPP_
#define HOMOPT_OBJECTIVES_HPP_

#include <functional>
#include <string>
#include <vector>

#include "homopt/search_space.hpp"

namespace homopt {

/// A named black-box loss over a declared space. Built-ins are pure and
/// total on their domain; external objectives may fail, which the driver
/// records under a sentinel loss.
struct Objective {
  std::string name;
  SearchSpace space;
  std::function<double(const ParamAssignment&)> eval;
};

/// sin(10*pi*x) / (2x) + (x - 1)^4 on [0.5, 2.5]; heavily multimodal with
/// the global minimum in the leftmost basin. Throws DomainError outside the
/// domain.
double gramacy_lee(double x);

/// ((x-5)^2 + (y+3)^2) / 40 - cos(x-5) * cos((y+3)/sqrt(2)) + 1 on
/// [-20, 20]^2; the shift keeps the global minimum (value 0) away from the
/// origin, at (5, -3). Throws DomainError outside the domain.
double modified_griewank(double x, double y);

const std::vector<std::string>& builtin_objective_names();
Objective builtin_objective(const std::string& name);  // throws ConfigError

/// Bridges a shell command as an objective over `space`: per evaluation the
/// command receives one JSON line {"params": {...}} on stdin and must answer
/// one JSON line {"loss": ...} on stdout. Non-zero exit, malformed output,
/// or a timeout raise EvalError.
Objective external_objective(std::string command, SearchSpace space,
                             double timeout_s = 300.0);

}  // namespace homopt

#endif  // HOMOPT_OBJECTIVES_HPP_
