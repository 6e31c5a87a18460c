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

#ifndef HOMOPT_SEARCH_SPACE_HPP_
#define HOMOPT_SEARCH_SPACE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "homopt/rng.hpp"

namespace homopt {

/// A concrete hyperparameter value: real, integer, or categorical label.
using ParamValue = std::variant<double, std::int64_t, std::string>;

/// Named assignment of one value per parameter.
using ParamAssignment = std::map<std::string, ParamValue>;

/// A point in the encoded continuous box (one real per parameter).
using ParamVector = std::vector<double>;

struct ContinuousDomain {
  double lo = 0.0;
  double hi = 1.0;
  bool log_scale = false;
};

struct IntegerDomain {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct CategoricalDomain {
  std::vector<std::string> choices;
};

using ParamDomain = std::variant<ContinuousDomain, IntegerDomain, CategoricalDomain>;

struct ParamSpec {
  std::string name;
  ParamDomain domain;
};

/// Axis-aligned bounds of the encoded box.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  double width(std::size_t j) const { return hi[j] - lo[j]; }
};

/// Ordered, mixed-type search space with a bijective embedding into a
/// bounded real vector. Declaration order fixes the coordinate order:
/// continuous parameters embed as the raw value (log10 of it when
/// log-scaled), integer and categorical parameters embed as their index.
/// Immutable after construction; safe to share across threads.
class SearchSpace {
 public:
  SearchSpace() = default;

  /// Validates per-kind invariants and name uniqueness; throws DomainError.
  explicit SearchSpace(std::vector<ParamSpec> params);

  std::size_t dim() const { return params_.size(); }
  const std::vector<ParamSpec>& params() const { return params_; }

  /// Bounds of the encoded box (log-space bounds for log-scaled params,
  /// [0, n_choices-1] for categoricals).
  const Box& bounds() const { return bounds_; }

  /// Maps a full assignment onto the encoded box. Throws DomainError on a
  /// missing or unknown name, a type mismatch, or an out-of-domain value.
  ParamVector encode(const ParamAssignment& assignment) const;

  /// Total inverse of encode: clamps continuous coordinates to their bounds
  /// and rounds integer/categorical coordinates to the nearest valid index
  /// (ties away from zero). Every real vector of the right length decodes.
  ParamAssignment decode(const ParamVector& x) const;

  /// Coordinatewise projection onto the encoded box; idempotent.
  ParamVector clamp(ParamVector x) const;

  /// One uniform draw per coordinate over its encoded range (log-space
  /// uniform for log-scaled params, uniform over indices otherwise).
  ParamVector sample_uniform(Rng& rng) const;

 private:
  void check_dim(const ParamVector& x) const;

  std::vector<ParamSpec> params_;
  Box bounds_;
};

}  // namespace homopt

#endif  // HOMOPT_SEARCH_SPACE_HPP_
