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

#include "homopt/gam.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "homopt/bspline.hpp"
#include "homopt/errors.hpp"

namespace homopt {

namespace {

constexpr double kRidge = 1e-10;
constexpr double kDegenerateExpand = 1e-9;

void validate_config(const GamConfig& cfg) {
  if (cfg.spline_degree < 1 || cfg.spline_degree > 7)
    throw FitError("spline degree must be in [1, 7]");
  if (cfg.n_splines <= cfg.spline_degree)
    throw FitError("n_splines must exceed the spline degree");
  if (cfg.penalty < 0.0) throw FitError("penalty must be >= 0");
  if (cfg.penalty_order < 1 || cfg.penalty_order > 3)
    throw FitError("penalty_order must be in {1, 2, 3}");
}

// D^T D for the order-q difference matrix on m coefficients.
Eigen::MatrixXd difference_penalty(int m, int q) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(m, m);
  for (int step = 0; step < q; ++step) {
    const auto rows = d.rows() - 1;
    Eigen::MatrixXd next(rows, m);
    next = d.bottomRows(rows) - d.topRows(rows);
    d = next;
  }
  return d.transpose() * d;
}

}  // namespace

GamSurrogate fit_gam(std::span<const ParamVector> points, std::span<const double> losses,
                     const GamConfig& config) {
  validate_config(config);
  if (points.size() != losses.size())
    throw FitError("points and losses must have equal length");
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 2) throw FitError("need at least 2 points to fit");

  const std::size_t dim = points[0].size();
  if (dim == 0) throw FitError("points must be non-empty vectors");
  for (const auto& p : points) {
    if (p.size() != dim) throw FitError("inconsistent point dimensions");
    for (double v : p)
      if (!std::isfinite(v)) throw FitError("non-finite coordinate in training data");
  }
  for (double y : losses)
    if (!std::isfinite(y)) throw FitError("non-finite loss in training data");

  GamSurrogate model;
  model.config_ = config;
  model.smooths_.resize(dim);

  const int m = config.n_splines;
  const int degree = config.spline_degree;

  // Per-dimension training ranges; a zero-width dimension carries no smooth.
  std::vector<std::size_t> active_dims;
  for (std::size_t j = 0; j < dim; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
    }
    auto& smooth = model.smooths_[j];
    smooth.active = hi > lo;
    if (!smooth.active) hi = lo + kDegenerateExpand;
    smooth.train_lo = lo;
    smooth.train_hi = hi;
    smooth.knots = open_uniform_knots(m, degree, lo, hi);
    smooth.coefficients.assign(static_cast<std::size_t>(m), 0.0);
    smooth.basis_means.assign(static_cast<std::size_t>(m), 0.0);
    if (smooth.active) active_dims.push_back(j);
  }

  const auto n_active = static_cast<Eigen::Index>(active_dims.size());
  const Eigen::Index cols = 1 + n_active * m;

  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(n, cols);
  design.col(0).setOnes();
  double scratch[16];
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index a = 0; a < n_active; ++a) {
      const std::size_t j = active_dims[static_cast<std::size_t>(a)];
      const auto& smooth = model.smooths_[j];
      const int first =
          bspline_basis_nonzero(smooth.knots, degree, points[static_cast<std::size_t>(i)][j], scratch);
      for (int k = 0; k <= degree; ++k)
        design(i, 1 + a * m + first + k) = scratch[k];
    }
  }

  // Center the basis columns; the removed means live in the intercept.
  Eigen::VectorXd col_means = design.rightCols(cols - 1).colwise().mean();
  design.rightCols(cols - 1).rowwise() -= col_means.transpose();

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = losses[static_cast<std::size_t>(i)];

  Eigen::MatrixXd normal = design.transpose() * design;
  if (config.penalty > 0.0 && n_active > 0) {
    const Eigen::MatrixXd block = config.penalty * difference_penalty(m, config.penalty_order);
    for (Eigen::Index a = 0; a < n_active; ++a)
      normal.block(1 + a * m, 1 + a * m, m, m) += block;
  }
  normal.diagonal().array() += kRidge;

  const Eigen::VectorXd rhs = design.transpose() * y;
  Eigen::LDLT<Eigen::MatrixXd> solver(normal);
  if (solver.info() != Eigen::Success)
    throw FitError("penalized normal equations are singular");
  const Eigen::VectorXd beta = solver.solve(rhs);
  if (!beta.allFinite()) throw FitError("penalized normal equations are singular");

  model.intercept_ = beta(0);
  for (Eigen::Index a = 0; a < n_active; ++a) {
    auto& smooth = model.smooths_[active_dims[static_cast<std::size_t>(a)]];
    for (int k = 0; k < m; ++k) {
      smooth.coefficients[static_cast<std::size_t>(k)] = beta(1 + a * m + k);
      smooth.basis_means[static_cast<std::size_t>(k)] = col_means(a * m + k);
    }
    smooth.center_offset = 0.0;
    for (int k = 0; k < m; ++k)
      smooth.center_offset +=
          smooth.basis_means[static_cast<std::size_t>(k)] * smooth.coefficients[static_cast<std::size_t>(k)];
  }
  return model;
}

double GamSurrogate::predict(const ParamVector& x) const {
  if (x.size() != smooths_.size())
    throw DomainError("predict: vector length does not match fitted dimension");
  double value = intercept_;
  double scratch[16];
  for (std::size_t j = 0; j < smooths_.size(); ++j) {
    const auto& smooth = smooths_[j];
    if (!smooth.active) continue;
    const double xx = std::clamp(x[j], smooth.train_lo, smooth.train_hi);
    const int first = bspline_basis_nonzero(smooth.knots, config_.spline_degree, xx, scratch);
    double s = -smooth.center_offset;
    for (int k = 0; k <= config_.spline_degree; ++k)
      s += scratch[k] * smooth.coefficients[static_cast<std::size_t>(first + k)];
    value += s;
  }
  return value;
}

std::vector<double> GamSurrogate::predict_batch(std::span<const ParamVector> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(predict(x));
  return out;
}

}  // namespace homopt
