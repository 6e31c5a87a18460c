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

#ifndef HOMOPT_ERRORS_HPP_
#define HOMOPT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace homopt {

/// Base class for all homopt exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value fell outside its declared parameter domain, or a name is unknown.
struct DomainError : Error {
  using Error::Error;
};

/// Run-config parsing or validation failure.
struct ConfigError : Error {
  using Error::Error;
};

/// Surrogate fitting failure (too few points, singular system, bad inputs).
struct FitError : Error {
  using Error::Error;
};

/// Objective evaluation failure (subprocess crash, protocol violation, timeout).
struct EvalError : Error {
  using Error::Error;
};

/// Optimizer failure; carries the point that triggered it.
struct SolverError : Error {
  SolverError(const std::string& what, std::vector<double> where)
      : Error(what), point(std::move(where)) {}
  std::vector<double> point;
};

}  // namespace homopt

#endif  // HOMOPT_ERRORS_HPP_
