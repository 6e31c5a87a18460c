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

#ifndef HOMOPT_CONFIG_HPP_
#define HOMOPT_CONFIG_HPP_

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "homopt/driver.hpp"
#include "homopt/objectives.hpp"

namespace homopt {

struct ObjectiveSpec {
  std::string builtin;   // one of builtin_objective_names(), or empty
  std::string command;   // external objective command, or empty
  double timeout_s = 300.0;
};

/// One experiment as data: objective, space, method, driver knobs, seeds,
/// and output location. Defaults follow the experiment conventions baked
/// into the driver (warmup 20, jitter 0.005, k 0.5, 5 homotopy steps,
/// 25 splines with penalty 1e-4).
struct RunConfig {
  ObjectiveSpec objective;
  std::optional<SearchSpace> space;  // defaults to the builtin's space
  std::string method = "homopt+random";
  SamplerConfig sampler = RandomSamplerConfig{};
  int trials = 0;
  std::optional<double> max_time_s;
  int warmup = 20;
  double jitter = 0.005;
  double k = 0.5;
  int top_count = 10;
  int homotopy_steps = 5;
  GamConfig gam;
  NmConfig nelder_mead;
  std::vector<std::uint64_t> seeds;
  std::string output = "homopt_out";
  bool compare = false;
  bool svg = false;
};

/// True when the method string carries the "homopt+" augmentation prefix.
bool method_uses_homopt(const std::string& method);

/// Base sampler name: "random", "tpe", "bayes", or "external".
std::string method_base(const std::string& method);

/// Parses and validates a JSON run config, filling defaults. Parse errors
/// carry line/column; validation errors name the offending field. Unknown
/// keys are rejected at every level.
RunConfig parse_run_config(const std::string& text);

/// Reads the file then parses; throws ConfigError when unreadable.
RunConfig load_run_config(const std::string& path);

/// Serializes the effective config; round-trips through parse_run_config.
nlohmann::json run_config_to_json(const RunConfig& config);

/// Builds the objective declared by the config, applying a space override
/// when present. External objectives require an explicit space.
Objective make_objective(const RunConfig& config);

/// Maps config fields onto a driver configuration for one seed.
DriverConfig make_driver_config(const RunConfig& config, bool augment,
                                std::uint64_t seed);

}  // namespace homopt

#endif  // HOMOPT_CONFIG_HPP_
