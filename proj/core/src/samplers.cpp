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

#include "homopt/samplers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "homopt/errors.hpp"
#include "homopt/json_io.hpp"
#include "homopt/subprocess.hpp"

namespace homopt {

namespace {

constexpr double kBandwidthAbsFloor = 1e-12;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double sample_sd(const std::vector<double>& v) {
  const auto n = v.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

// Linear-interpolation quantile on a sorted copy.
double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

// Silverman's rule of thumb, floored at 1e-3 of the box width.
double silverman_bandwidth(const std::vector<double>& values, double box_width) {
  const double n = static_cast<double>(values.size());
  double spread = sample_sd(values);
  if (values.size() >= 2) {
    const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
  }
  double h = 0.9 * spread * std::pow(n, -0.2);
  h = std::max(h, 1e-3 * box_width);
  return std::max(h, kBandwidthAbsFloor);
}

double log_mixture_density(double x, const std::vector<double>& centers, double h) {
  // log of (1/n) sum_i N(x; c_i, h^2), evaluated via log-sum-exp
  double max_term = -std::numeric_limits<double>::infinity();
  for (double c : centers) {
    const double z = (x - c) / h;
    max_term = std::max(max_term, -0.5 * z * z);
  }
  double sum = 0.0;
  for (double c : centers) {
    const double z = (x - c) / h;
    sum += std::exp(-0.5 * z * z - max_term);
  }
  return max_term + std::log(sum) - std::log(static_cast<double>(centers.size())) -
         std::log(h) - 0.5 * std::log(2.0 * std::numbers::pi);
}

void build_tpe_model(const TrialHistory& history, const SearchSpace& space,
                     const TpeSamplerConfig& cfg, SamplerState::TpeModel* model) {
  const TpeSplit split = tpe_split(history, cfg.gamma);
  const auto& trials = history.trials();
  const std::size_t dim = space.dim();

  model->history_size = history.size();
  model->good_centers.assign(dim, {});
  model->bad_centers.assign(dim, {});
  model->good_bandwidth.assign(dim, 0.0);
  model->bad_bandwidth.assign(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    auto& good = model->good_centers[j];
    auto& bad = model->bad_centers[j];
    good.reserve(split.good.size());
    bad.reserve(split.bad.size());
    for (std::size_t idx : split.good) good.push_back(trials[idx].params[j]);
    for (std::size_t idx : split.bad) bad.push_back(trials[idx].params[j]);
    model->good_bandwidth[j] = silverman_bandwidth(good, space.bounds().width(j));
    model->bad_bandwidth[j] = silverman_bandwidth(bad, space.bounds().width(j));
  }
}

ParamVector propose_tpe(const TpeSamplerConfig& cfg, SamplerState& state,
                        const TrialHistory& history, const SearchSpace& space) {
  if (history.size() < static_cast<std::size_t>(cfg.n_startup) || history.size() < 2)
    return space.sample_uniform(state.rng());

  auto& model = state.tpe_cache;
  if (model.history_size != history.size())
    build_tpe_model(history, space, cfg, &model);

  const std::size_t dim = space.dim();
  const auto& box = space.bounds();
  ParamVector best_candidate;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < cfg.n_candidates; ++c) {
    ParamVector x(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& centers = model.good_centers[j];
      const auto pick = static_cast<std::size_t>(
          uniform_int(state.rng(), 0, static_cast<std::int64_t>(centers.size()) - 1));
      const double draw = centers[pick] + model.good_bandwidth[j] * uniform_normal(state.rng());
      x[j] = std::clamp(draw, box.lo[j], box.hi[j]);
    }
    double score = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      score += log_mixture_density(x[j], model.good_centers[j], model.good_bandwidth[j]);
      score -= log_mixture_density(x[j], model.bad_centers[j], model.bad_bandwidth[j]);
    }
    if (score > best_score) {
      best_score = score;
      best_candidate = std::move(x);
    }
  }
  return best_candidate;
}

void build_gp_model(const TrialHistory& history, const SearchSpace& space,
                    const BayesSamplerConfig& cfg, SamplerState::GpModel* model) {
  const auto& trials = history.trials();
  const auto n = static_cast<Eigen::Index>(trials.size());
  const auto dim = static_cast<Eigen::Index>(space.dim());

  Eigen::MatrixXd x(n, dim);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j)
      x(i, j) = trials[static_cast<std::size_t>(i)].params[static_cast<std::size_t>(j)];
    y(i) = trials[static_cast<std::size_t>(i)].loss;
  }

  const double mean = y.mean();
  double sd = std::sqrt((y.array() - mean).square().mean());
  if (sd < 1e-12) sd = 1.0;
  Eigen::VectorXd z = (y.array() - mean) / sd;

  // median heuristic for the kernel length scale
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      dists.push_back((x.row(i) - x.row(j)).norm());
  double ell = dists.empty() ? 0.0 : quantile(dists, 0.5);
  if (!(ell > 0.0)) {
    double diag = 0.0;
    for (std::size_t j = 0; j < space.dim(); ++j)
      diag += space.bounds().width(j) * space.bounds().width(j);
    ell = 1e-3 * std::sqrt(diag);
    if (!(ell > 0.0)) ell = 1.0;
  }
  const double signal_var = (z.array() - z.mean()).square().mean();

  Eigen::MatrixXd kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double r2 = (x.row(i) - x.row(j)).squaredNorm();
      const double v = signal_var * std::exp(-r2 / (2.0 * ell * ell));
      kernel(i, j) = v;
      kernel(j, i) = v;
    }
  }

  // escalate the jitter until the factorization goes through
  double jitter = cfg.noise;
  Eigen::LLT<Eigen::MatrixXd> llt;
  bool ok = false;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd k = kernel;
    k.diagonal().array() += jitter;
    llt.compute(k);
    if (llt.info() == Eigen::Success) {
      ok = true;
      break;
    }
    jitter *= 10.0;
  }
  if (!ok) throw FitError("gp sampler: kernel singular after jitter escalation");

  const Eigen::VectorXd alpha = llt.solve(z);
  const Eigen::MatrixXd l = llt.matrixL();

  model->history_size = history.size();
  model->length_scale = ell;
  model->signal_var = signal_var;
  model->best_z = z.minCoeff();
  model->z.assign(z.data(), z.data() + n);
  model->alpha.assign(alpha.data(), alpha.data() + n);
  model->chol.resize(static_cast<std::size_t>(n * n));
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      model->chol.data(), n, n) = l;
}

ParamVector propose_bayes(const BayesSamplerConfig& cfg, SamplerState& state,
                          const TrialHistory& history, const SearchSpace& space) {
  if (history.size() < static_cast<std::size_t>(cfg.n_startup) || history.size() < 2)
    return space.sample_uniform(state.rng());

  auto& model = state.gp_cache;
  if (model.history_size != history.size())
    build_gp_model(history, space, cfg, &model);

  const auto n = static_cast<Eigen::Index>(history.size());
  const auto& trials = history.trials();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      l(model.chol.data(), n, n);
  Eigen::Map<const Eigen::VectorXd> alpha(model.alpha.data(), n);

  ParamVector best_candidate;
  double best_ei = -1.0;
  Eigen::VectorXd k_star(n);
  for (int c = 0; c < cfg.n_candidates; ++c) {
    const ParamVector x = space.sample_uniform(state.rng());
    for (Eigen::Index i = 0; i < n; ++i) {
      double r2 = 0.0;
      const auto& p = trials[static_cast<std::size_t>(i)].params;
      for (std::size_t j = 0; j < p.size(); ++j) r2 += (x[j] - p[j]) * (x[j] - p[j]);
      k_star(i) = model.signal_var *
                  std::exp(-r2 / (2.0 * model.length_scale * model.length_scale));
    }
    const double mu = k_star.dot(alpha);
    const Eigen::VectorXd v = l.triangularView<Eigen::Lower>().solve(k_star);
    const double var = std::max(0.0, model.signal_var - v.squaredNorm());
    const double ei = expected_improvement(mu, std::sqrt(var), model.best_z);
    if (ei > best_ei) {
      best_ei = ei;
      best_candidate = x;
    }
  }
  return best_candidate;
}

ParamVector propose_external(const ExternalSamplerConfig& cfg, const TrialHistory& history,
                             const SearchSpace& space) {
  nlohmann::json request;
  request["space"] = space_to_json(space);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& t : history.trials()) {
    nlohmann::json e;
    e["params"] = assignment_to_json(space.decode(t.params));
    e["loss"] = t.loss;
    entries.push_back(std::move(e));
  }
  request["history"] = std::move(entries);

  const ProcessResult proc = run_process(cfg.command, request.dump() + "\n", cfg.timeout_s);
  if (proc.timed_out) throw EvalError("external sampler timed out");
  if (proc.exit_code != 0)
    throw EvalError("external sampler exited with code " + std::to_string(proc.exit_code));

  const auto line_end = proc.output.find('\n');
  const std::string line =
      line_end == std::string::npos ? proc.output : proc.output.substr(0, line_end);
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw EvalError("external sampler produced malformed JSON");
  }
  if (!reply.is_object() || !reply.contains("params"))
    throw EvalError("external sampler reply is missing \"params\"");
  try {
    return space.encode(assignment_from_json(reply["params"]));
  } catch (const Error& e) {
    throw EvalError(std::string("external sampler proposal rejected: ") + e.what());
  }
}

}  // namespace

TpeSplit tpe_split(const TrialHistory& history, double gamma) {
  const auto n = history.size();
  if (n < 2) throw Error("tpe_split: need at least 2 trials");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("tpe: gamma must be in (0, 1)");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const auto& trials = history.trials();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trials[a].loss < trials[b].loss;
  });

  auto n_good = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n)));
  n_good = std::clamp<std::size_t>(n_good, 1, n - 1);

  TpeSplit split;
  split.good.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_good));
  split.bad.assign(order.begin() + static_cast<std::ptrdiff_t>(n_good), order.end());
  return split;
}

double expected_improvement(double mu, double sigma, double best) {
  const double delta = best - mu;
  if (sigma <= 0.0) return std::max(delta, 0.0);
  const double z = delta / sigma;
  return std::max(0.0, delta * normal_cdf(z) + sigma * normal_pdf(z));
}

ParamVector propose(const SamplerConfig& config, SamplerState& state,
                    const TrialHistory& history, const SearchSpace& space) {
  if (space.dim() == 0) throw DomainError("propose: search space is empty");
  if (std::holds_alternative<RandomSamplerConfig>(config))
    return space.sample_uniform(state.rng());
  if (const auto* tpe = std::get_if<TpeSamplerConfig>(&config))
    return propose_tpe(*tpe, state, history, space);
  if (const auto* bayes = std::get_if<BayesSamplerConfig>(&config))
    return propose_bayes(*bayes, state, history, space);
  return propose_external(std::get<ExternalSamplerConfig>(config), history, space);
}

}  // namespace homopt
