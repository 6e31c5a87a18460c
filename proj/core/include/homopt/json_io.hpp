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

#ifndef HOMOPT_JSON_IO_HPP_
#define HOMOPT_JSON_IO_HPP_

#include <nlohmann/json.hpp>

#include "homopt/gam.hpp"
#include "homopt/search_space.hpp"

namespace homopt {

// Search-space declaration schema, shared by the run config and the
// external sampler wire format: an array of
//   {"name": ..., "kind": "continuous", "lo": ..., "hi": ..., "log": bool}
//   {"name": ..., "kind": "integer", "lo": ..., "hi": ...}
//   {"name": ..., "kind": "categorical", "choices": [...]}
nlohmann::json space_to_json(const SearchSpace& space);
SearchSpace space_from_json(const nlohmann::json& j);  // strict; throws ConfigError

nlohmann::json assignment_to_json(const ParamAssignment& assignment);
ParamAssignment assignment_from_json(const nlohmann::json& j);

/// Debug dump of a fitted surrogate (intercept, per-dimension knots and
/// coefficients). Not a stability-guaranteed format.
nlohmann::json gam_to_json(const GamSurrogate& model);

}  // namespace homopt

#endif  // HOMOPT_JSON_IO_HPP_
