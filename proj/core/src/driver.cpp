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

#include "homopt/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "homopt/errors.hpp"
#include "homopt/log.hpp"

namespace homopt {

namespace {

void validate_config(const DriverConfig& cfg) {
  if (cfg.max_trials < 1) throw ConfigError("driver: max_trials must be >= 1");
  if (cfg.warmup < 0) throw ConfigError("driver: warmup must be >= 0");
  if (cfg.max_trials < cfg.warmup)
    throw ConfigError("driver: max_trials must be >= warmup");
  if (!(cfg.k > 0.0 && cfg.k <= 1.0)) throw ConfigError("driver: k must be in (0, 1]");
  if (cfg.distance_factor < 0.0)
    throw ConfigError("driver: distance_factor must be >= 0");
  if (cfg.top_count < 1) throw ConfigError("driver: top_count must be >= 1");
  if (cfg.max_time_s && !(*cfg.max_time_s > 0.0))
    throw ConfigError("driver: max_time_s must be > 0");
}

// Worst-case stand-in for a failed evaluation: one order of magnitude above
// the worst finite loss seen so far, or 1e30 before any succeeded.
double sentinel_loss(const TrialHistory& history) {
  if (history.empty()) return 1e30;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& t : history.trials()) worst = std::max(worst, t.loss);
  return worst + 10.0 * std::max(1.0, std::abs(worst));
}

std::vector<std::size_t> lowest_loss_indices(const TrialHistory& history,
                                             std::size_t count) {
  const auto& trials = history.trials();
  std::vector<std::size_t> order(trials.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trials[a].loss < trials[b].loss;
  });
  order.resize(std::min(count, order.size()));
  return order;
}

}  // namespace

TrialBranch select_branch(int completed_trials, int warmup) {
  if (completed_trials < 0) throw Error("select_branch: negative trial count");
  if (completed_trials < warmup) return TrialBranch::kWarmup;
  switch (completed_trials % 5) {
    case 0:
    case 2:
      return TrialBranch::kInner;
    case 3:
    case 4:
      return TrialBranch::kPerturb;
    default:
      return TrialBranch::kHomotopy;
  }
}

ParamVector perturb_best(const TrialHistory& history, const SearchSpace& space,
                         double distance_factor, int top_count, Rng& rng) {
  if (history.empty()) throw Error("perturb_best: history is empty");
  const auto top = lowest_loss_indices(history, static_cast<std::size_t>(top_count));
  const auto& trials = history.trials();
  const std::size_t dim = space.dim();

  ParamVector candidate = history.best().params;
  for (std::size_t j = 0; j < dim; ++j) {
    double mean = 0.0;
    for (std::size_t idx : top) mean += trials[idx].params[j];
    mean /= static_cast<double>(top.size());
    double var = 0.0;
    for (std::size_t idx : top) {
      const double d = trials[idx].params[j] - mean;
      var += d * d;
    }
    var /= static_cast<double>(top.size());
    const double svar = var * distance_factor;
    candidate[j] += uniform_real(rng, -svar, svar);
  }
  return space.clamp(std::move(candidate));
}

std::size_t recent_fit_count(double k, std::size_t completed_trials) {
  const long long rounded = std::llround(k * static_cast<double>(completed_trials));
  return static_cast<std::size_t>(
      std::clamp<long long>(rounded, 0, static_cast<long long>(completed_trials)));
}

ParamVector homotopy_step(const TrialHistory& history, const SearchSpace& space,
                          double k, const HomotopyConfig& homotopy_config,
                          const GamConfig& gam_config) {
  const auto n = history.size();
  const auto n_recent = recent_fit_count(k, n);
  if (n < 2 || n_recent < 2)
    throw FitError("homotopy_step: not enough trials to fit surrogates");

  const auto& trials = history.trials();
  std::vector<ParamVector> all_points;
  std::vector<double> all_losses;
  all_points.reserve(n);
  all_losses.reserve(n);
  for (const auto& t : trials) {
    all_points.push_back(t.params);
    all_losses.push_back(t.loss);
  }

  const std::vector<ParamVector> recent_points(all_points.end() - static_cast<std::ptrdiff_t>(n_recent),
                                               all_points.end());
  const std::vector<double> recent_losses(all_losses.end() - static_cast<std::ptrdiff_t>(n_recent),
                                          all_losses.end());

  const GamSurrogate recent_fit = fit_gam(recent_points, recent_losses, gam_config);
  const GamSurrogate full_fit = fit_gam(all_points, all_losses, gam_config);

  const ParamVector start = space.clamp(history.best().params);
  const HomotopyPath path =
      track_path(recent_fit, full_fit, start, space.bounds(), homotopy_config);

  const std::vector<double> predicted = full_fit.predict_batch(path.points);
  const auto best =
      std::min_element(predicted.begin(), predicted.end()) - predicted.begin();
  return space.clamp(path.points[static_cast<std::size_t>(best)]);
}

TrialHistory run_optimization(const std::function<double(const ParamAssignment&)>& objective,
                              const SearchSpace& space, const DriverConfig& config,
                              const TrialCallback& on_trial) {
  validate_config(config);
  if (space.dim() == 0) throw ConfigError("driver: search space is empty");

  SamplerState sampler_state(config.seed);
  Rng driver_rng(derive_seed(config.seed, 1));
  TrialHistory history;

  const auto start_time = std::chrono::steady_clock::now();
  const auto elapsed_s = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
        .count();
  };

  while (static_cast<int>(history.size()) < config.max_trials) {
    if (config.max_time_s && elapsed_s() >= *config.max_time_s) break;
    const int completed = static_cast<int>(history.size());

    TrialBranch branch =
        config.augment ? select_branch(completed, config.warmup)
                       : (completed < config.warmup ? TrialBranch::kWarmup
                                                    : TrialBranch::kInner);

    ParamVector candidate;
    if (branch == TrialBranch::kHomotopy) {
      const auto n_recent = recent_fit_count(config.k, static_cast<std::size_t>(completed));
      if (completed < 2 || n_recent < 2) {
        branch = TrialBranch::kInner;
      } else {
        try {
          candidate =
              homotopy_step(history, space, config.k, config.homotopy, config.gam);
        } catch (const FitError& e) {
          log_debug(std::string("homotopy step fell back to the base sampler: ") +
                    e.what());
          branch = TrialBranch::kInner;
        }
      }
    }
    if (branch == TrialBranch::kPerturb) {
      candidate = perturb_best(history, space, config.distance_factor,
                               config.top_count, driver_rng);
    }
    if (branch == TrialBranch::kWarmup || branch == TrialBranch::kInner) {
      candidate = propose(config.sampler, sampler_state, history, space);
    }

    const ParamAssignment decoded = space.decode(candidate);
    double loss;
    try {
      loss = objective(decoded);
    } catch (const EvalError& e) {
      log_warn(std::string("evaluation failed, recording sentinel loss: ") + e.what());
      loss = sentinel_loss(history);
    }
    if (!std::isfinite(loss)) loss = sentinel_loss(history);

    history.append(std::move(candidate), loss, branch);

    if (on_trial) {
      TrialEvent event;
      event.index = static_cast<int>(history.size()) - 1;
      event.branch = branch;
      event.params = decoded;
      event.loss = loss;
      event.best_so_far = history.best_so_far(history.size() - 1);
      event.elapsed_s = elapsed_s();
      on_trial(event);
    }
  }
  return history;
}

}  // namespace homopt
