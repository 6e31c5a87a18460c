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

#ifndef HOMOPT_EXPERIMENT_HPP_
#define HOMOPT_EXPERIMENT_HPP_

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "homopt/config.hpp"
#include "homopt/trial.hpp"

namespace homopt {

struct SeedRun {
  std::uint64_t seed = 0;
  TrialHistory history;
  std::vector<double> elapsed_s;  // per trial
};

struct MethodRuns {
  std::string method;
  std::vector<SeedRun> runs;  // one per seed, config order
};

struct ExperimentResult {
  std::string output_dir;
  std::vector<std::string> csv_paths;
  std::string summary_path;
  std::string svg_path;  // empty unless the config asked for a chart
  double pooled_min = 0.0;
  nlohmann::json summary;
  std::vector<MethodRuns> methods;
};

/// Executes the configured method for every seed (seeds run in parallel on
/// independent drivers), plus the undecorated base sampler when compare is
/// set. Writes one trial CSV per method, a summary JSON with per-method
/// final bests and mean regret, and optionally a mean-regret SVG chart.
/// Regret columns use the pooled minimum across every run in the
/// experiment.
ExperimentResult run_experiment(const RunConfig& config);

}  // namespace homopt

#endif  // HOMOPT_EXPERIMENT_HPP_
