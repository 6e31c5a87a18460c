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

#ifndef HOMOPT_DRIVER_HPP_
#define HOMOPT_DRIVER_HPP_

#include <functional>
#include <optional>

#include "homopt/gam.hpp"
#include "homopt/homotopy.hpp"
#include "homopt/samplers.hpp"
#include "homopt/search_space.hpp"
#include "homopt/trial.hpp"

namespace homopt {

struct DriverConfig {
  int max_trials = 500;
  std::optional<double> max_time_s;  // wall-clock budget, checked before each trial
  int warmup = 20;                   // base-sampler trials before augmentation
  double distance_factor = 0.005;    // jitter strength on the top-trial variance
  double k = 0.5;                    // fraction of trials behind the recent surrogate
  int top_count = 10;                // trials entering the perturbation variance
  bool augment = true;               // false runs the base sampler alone
  HomotopyConfig homotopy;
  GamConfig gam;
  SamplerConfig sampler;
  std::uint64_t seed = 0;
};

/// Per-trial event for consumers of the run (CSV writer, progress display).
struct TrialEvent {
  int index = 0;
  TrialBranch branch = TrialBranch::kWarmup;
  ParamAssignment params;
  double loss = 0.0;
  double best_so_far = 0.0;
  double elapsed_s = 0.0;
};
using TrialCallback = std::function<void(const TrialEvent&)>;

/// Trial scheduler: base-sampler draws during warmup, then a fixed cycle
/// over the completed-trial count modulo 5 -- residues {0, 2} sample the
/// base strategy, {3, 4} perturb the incumbent, and residue 1 takes a
/// homotopy step.
TrialBranch select_branch(int completed_trials, int warmup);

/// Jittered copy of the incumbent: each coordinate moves by a uniform draw
/// from +/- (variance of the min(top_count, n) lowest-loss trials on that
/// coordinate, scaled by distance_factor), then clamps onto the box.
ParamVector perturb_best(const TrialHistory& history, const SearchSpace& space,
                         double distance_factor, int top_count, Rng& rng);

/// Number of newest trials behind the recent surrogate: round(k * n),
/// ties away from zero, capped at n.
std::size_t recent_fit_count(double k, std::size_t completed_trials);

/// One homotopy move: fits the recent surrogate on the round(k * n) newest
/// trials and the full surrogate on everything, tracks the blend from the
/// incumbent, and returns the path point with the lowest full-surrogate
/// prediction. Throws FitError when there is not enough data to fit.
ParamVector homotopy_step(const TrialHistory& history, const SearchSpace& space,
                          double k, const HomotopyConfig& homotopy_config,
                          const GamConfig& gam_config);

/// Runs the full optimization loop until the trial budget (and optional
/// time budget -- whichever is exhausted first) is spent. Every candidate is
/// decoded, evaluated, and appended; evaluation failures and non-finite
/// losses are recorded under a worst-case sentinel and the run continues.
/// Fully deterministic for a fixed seed when no time budget is set.
TrialHistory run_optimization(const std::function<double(const ParamAssignment&)>& objective,
                              const SearchSpace& space, const DriverConfig& config,
                              const TrialCallback& on_trial = {});

}  // namespace homopt

#endif  // HOMOPT_DRIVER_HPP_
