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

#include "homopt/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "homopt/errors.hpp"

namespace homopt {

namespace {

struct Vertex {
  ParamVector x;
  double f;
};

void validate_config(const NmConfig& cfg) {
  if (!(cfg.reflection > 0.0)) throw ConfigError("nelder-mead: reflection must be > 0");
  if (!(cfg.expansion > 1.0)) throw ConfigError("nelder-mead: expansion must be > 1");
  if (!(cfg.contraction > 0.0 && cfg.contraction < 1.0))
    throw ConfigError("nelder-mead: contraction must be in (0, 1)");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0))
    throw ConfigError("nelder-mead: shrink must be in (0, 1)");
  if (!(cfg.initial_step > 0.0))
    throw ConfigError("nelder-mead: initial_step must be > 0");
  if (!(cfg.x_tol >= 0.0 && cfg.f_tol >= 0.0))
    throw ConfigError("nelder-mead: tolerances must be >= 0");
}

ParamVector clamp_to_box(ParamVector x, const Box& box) {
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = std::clamp(x[j], box.lo[j], box.hi[j]);
  return x;
}

}  // namespace

NmResult nelder_mead_minimize(const NmObjective& objective, const ParamVector& x0,
                              const Box& box, const NmConfig& config,
                              const NmCallback& callback) {
  validate_config(config);
  const std::size_t dim = box.dim();
  if (x0.size() != dim)
    throw SolverError("nelder-mead: start point has wrong dimension", x0);

  for (std::size_t j = 0; j < dim; ++j) {
    const double tol = 1e-9 * std::max(1.0, box.width(j));
    if (x0[j] < box.lo[j] - tol || x0[j] > box.hi[j] + tol)
      throw SolverError("nelder-mead: start point outside the box", x0);
  }

  ParamVector best_x = clamp_to_box(x0, box);
  double best_f = std::numeric_limits<double>::infinity();

  auto evaluate = [&](const ParamVector& p) {
    const double f = objective(p);
    if (!std::isfinite(f))
      throw SolverError("nelder-mead: objective returned a non-finite value", p);
    if (f < best_f) {
      best_f = f;
      best_x = p;
    }
    return f;
  };

  std::vector<Vertex> simplex;
  simplex.push_back({best_x, evaluate(best_x)});
  for (std::size_t j = 0; j < dim; ++j) {
    const double width = box.width(j);
    if (width <= 0.0) continue;  // frozen axis
    ParamVector v = simplex[0].x;
    double step = config.initial_step * width;
    if (v[j] + step > box.hi[j]) step = -step;
    v[j] += step;
    v = clamp_to_box(std::move(v), box);
    simplex.push_back({v, evaluate(v)});
  }

  const auto n_vertices = simplex.size();
  NmResult result;
  if (n_vertices == 1) {
    // every axis frozen; nothing to move
    result.x_min = best_x;
    result.f_min = best_f;
    result.converged = true;
    return result;
  }

  const int max_iter =
      config.max_iter > 0 ? config.max_iter : 200 * static_cast<int>(dim);
  const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  int iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (callback) callback(iter, simplex.front().x, simplex.front().f);

    double diameter = 0.0;
    for (std::size_t i = 1; i < n_vertices; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        diameter = std::max(diameter, std::abs(simplex[i].x[j] - simplex[0].x[j]));
    const double spread = simplex.back().f - simplex.front().f;
    if (diameter < config.x_tol && spread < config.f_tol) {
      converged = true;
      break;
    }
    ++iter;

    ParamVector centroid(dim, 0.0);
    for (std::size_t i = 0; i + 1 < n_vertices; ++i)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i].x[j];
    for (std::size_t j = 0; j < dim; ++j)
      centroid[j] /= static_cast<double>(n_vertices - 1);

    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f;
    const double f_second_worst = simplex[n_vertices - 2].f;

    auto move_from_centroid = [&](double factor, const ParamVector& toward) {
      ParamVector p(dim);
      for (std::size_t j = 0; j < dim; ++j)
        p[j] = centroid[j] + factor * (toward[j] - centroid[j]);
      return clamp_to_box(std::move(p), box);
    };

    ParamVector xr = move_from_centroid(-config.reflection, worst.x);
    const double fr = evaluate(xr);

    if (fr < f_best) {
      ParamVector xe = move_from_centroid(config.expansion, xr);
      const double fe = evaluate(xe);
      if (fe < fr)
        worst = {std::move(xe), fe};
      else
        worst = {std::move(xr), fr};
    } else if (fr < f_second_worst) {
      worst = {std::move(xr), fr};
    } else {
      bool shrink = false;
      if (fr < worst.f) {
        ParamVector xc = move_from_centroid(config.contraction, xr);
        const double fc = evaluate(xc);
        if (fc <= fr)
          worst = {std::move(xc), fc};
        else
          shrink = true;
      } else {
        ParamVector xc = move_from_centroid(config.contraction, worst.x);
        const double fc = evaluate(xc);
        if (fc < worst.f)
          worst = {std::move(xc), fc};
        else
          shrink = true;
      }
      if (shrink) {
        for (std::size_t i = 1; i < n_vertices; ++i) {
          ParamVector v(dim);
          for (std::size_t j = 0; j < dim; ++j)
            v[j] = simplex[0].x[j] + config.shrink * (simplex[i].x[j] - simplex[0].x[j]);
          v = clamp_to_box(std::move(v), box);
          simplex[i] = {std::move(v), 0.0};
          simplex[i].f = evaluate(simplex[i].x);
        }
      }
    }
  }

  result.x_min = best_x;
  result.f_min = best_f;
  result.iterations = iter;
  result.converged = converged;
  return result;
}

}  // namespace homopt
