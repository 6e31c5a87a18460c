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

#ifndef HOMOPT_SAMPLERS_HPP_
#define HOMOPT_SAMPLERS_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "homopt/rng.hpp"
#include "homopt/search_space.hpp"
#include "homopt/trial.hpp"

namespace homopt {

struct RandomSamplerConfig {};

struct TpeSamplerConfig {
  double gamma = 0.20;    // quantile of trials entering the good mixture
  int n_candidates = 10;  // draws from the good mixture per proposal
  int n_startup = 10;     // uniform trials before the estimator activates
};

struct BayesSamplerConfig {
  int n_startup = 20;
  int n_candidates = 10;
  double noise = 1e-6;  // diagonal jitter on the GP kernel
};

/// User-provided subprocess sampler. Receives one JSON line
/// {"space": [...], "history": [{"params": {...}, "loss": ...}, ...]} on
/// stdin and must answer one JSON line {"params": {...}} on stdout.
struct ExternalSamplerConfig {
  std::string command;
  double timeout_s = 300.0;
};

using SamplerConfig =
    std::variant<RandomSamplerConfig, TpeSamplerConfig, BayesSamplerConfig,
                 ExternalSamplerConfig>;

/// Mutable per-run sampler state: the RNG stream plus model artifacts
/// cached by history length (the history is append-only, so the length
/// identifies the fit). Regenerating from the same seed and history yields
/// the same proposal stream. Not safe to share across threads.
class SamplerState {
 public:
  explicit SamplerState(std::uint64_t seed) : rng_(seed) {}

  Rng& rng() { return rng_; }

  struct TpeModel {
    std::size_t history_size = 0;
    std::vector<std::vector<double>> good_centers;  // per dim
    std::vector<std::vector<double>> bad_centers;
    std::vector<double> good_bandwidth;
    std::vector<double> bad_bandwidth;
  };
  struct GpModel {
    std::size_t history_size = 0;
    std::vector<double> chol;   // row-major lower Cholesky factor of K
    std::vector<double> alpha;  // K^-1 z
    std::vector<double> z;      // standardized losses
    double length_scale = 1.0;
    double signal_var = 1.0;
    double best_z = 0.0;
  };

  TpeModel tpe_cache;
  GpModel gp_cache;

 private:
  Rng rng_;
};

/// Indices of the ceil(gamma * n) lowest-loss trials (ties broken by
/// completion order) and the remainder, in loss order.
struct TpeSplit {
  std::vector<std::size_t> good;
  std::vector<std::size_t> bad;
};
TpeSplit tpe_split(const TrialHistory& history, double gamma);

/// Closed-form expected improvement of a Gaussian N(mu, sigma^2) prediction
/// below the incumbent best; zero predictive spread degenerates to
/// max(best - mu, 0). Always >= 0.
double expected_improvement(double mu, double sigma, double best);

/// Draws the next candidate from the configured strategy. All strategies
/// fall back to a uniform draw while the history is shorter than their
/// startup budget. The proposal always lies inside the encoded box.
ParamVector propose(const SamplerConfig& config, SamplerState& state,
                    const TrialHistory& history, const SearchSpace& space);

}  // namespace homopt

#endif  // HOMOPT_SAMPLERS_HPP_
