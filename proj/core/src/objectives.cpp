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

#include "homopt/objectives.hpp"

#include <cmath>
#include <numbers>

#include "homopt/errors.hpp"
#include "homopt/json_io.hpp"
#include "homopt/subprocess.hpp"

namespace homopt {

namespace {

double require_real(const ParamAssignment& a, const std::string& name) {
  const auto it = a.find(name);
  if (it == a.end()) throw DomainError("objective: missing parameter " + name);
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&it->second))
    return static_cast<double>(*i);
  throw DomainError("objective: parameter " + name + " must be a real value");
}

}  // namespace

double gramacy_lee(double x) {
  if (!(x >= 0.5 && x <= 2.5))
    throw DomainError("gramacy_lee: x must lie in [0.5, 2.5]");
  const double q = (x - 1.0) * (x - 1.0);
  return std::sin(10.0 * std::numbers::pi * x) / (2.0 * x) + q * q;
}

double modified_griewank(double x, double y) {
  if (!(x >= -20.0 && x <= 20.0 && y >= -20.0 && y <= 20.0))
    throw DomainError("modified_griewank: (x, y) must lie in [-20, 20]^2");
  const double u = x - 5.0;
  const double v = y + 3.0;
  return (u * u + v * v) / 40.0 - std::cos(u) * std::cos(v / std::numbers::sqrt2) + 1.0;
}

const std::vector<std::string>& builtin_objective_names() {
  static const std::vector<std::string> names = {"gramacy_lee", "griewank_modified"};
  return names;
}

Objective builtin_objective(const std::string& name) {
  if (name == "gramacy_lee") {
    Objective obj;
    obj.name = name;
    obj.space = SearchSpace({{"x", ContinuousDomain{0.5, 2.5, false}}});
    obj.eval = [](const ParamAssignment& a) { return gramacy_lee(require_real(a, "x")); };
    return obj;
  }
  if (name == "griewank_modified") {
    Objective obj;
    obj.name = name;
    obj.space = SearchSpace({{"x", ContinuousDomain{-20.0, 20.0, false}},
                             {"y", ContinuousDomain{-20.0, 20.0, false}}});
    obj.eval = [](const ParamAssignment& a) {
      return modified_griewank(require_real(a, "x"), require_real(a, "y"));
    };
    return obj;
  }
  throw ConfigError("unknown builtin objective \"" + name + "\"");
}

Objective external_objective(std::string command, SearchSpace space, double timeout_s) {
  Objective obj;
  obj.name = "external";
  obj.space = std::move(space);
  obj.eval = [command = std::move(command), timeout_s](const ParamAssignment& a) {
    nlohmann::json request;
    request["params"] = assignment_to_json(a);
    const ProcessResult proc = run_process(command, request.dump() + "\n", timeout_s);
    if (proc.timed_out) throw EvalError("external objective timed out");
    if (proc.exit_code != 0)
      throw EvalError("external objective exited with code " +
                      std::to_string(proc.exit_code));
    const auto line_end = proc.output.find('\n');
    const std::string line =
        line_end == std::string::npos ? proc.output : proc.output.substr(0, line_end);
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw EvalError("external objective produced malformed JSON");
    }
    if (!reply.is_object() || !reply.contains("loss") || !reply["loss"].is_number())
      throw EvalError("external objective reply is missing a numeric \"loss\"");
    return reply["loss"].get<double>();
  };
  return obj;
}

}  // namespace homopt
