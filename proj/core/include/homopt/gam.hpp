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

#ifndef HOMOPT_GAM_HPP_
#define HOMOPT_GAM_HPP_

#include <span>
#include <vector>

#include "homopt/search_space.hpp"

namespace homopt {

/// Penalized B-spline settings for one additive model.
struct GamConfig {
  int n_splines = 25;      // basis functions per dimension
  double penalty = 1e-4;   // smoothing weight on coefficient differences
  int spline_degree = 3;
  int penalty_order = 2;   // difference order of the roughness matrix
};

/// One per-dimension smooth: clamped B-spline basis with centered columns.
struct GamSmooth {
  std::vector<double> knots;
  std::vector<double> coefficients;
  std::vector<double> basis_means;  // training column means, absorbed into the intercept
  double center_offset = 0.0;       // dot(basis_means, coefficients), precomputed
  double train_lo = 0.0;
  double train_hi = 0.0;
  bool active = true;               // false when all training coordinates coincide
};

/// A fitted additive model y ~ intercept + sum_j s_j(x_j). Immutable after
/// fit; evaluation clamps each coordinate to the training range of its
/// dimension, so predictions never ride an extrapolated spline tail.
class GamSurrogate {
 public:
  double intercept() const { return intercept_; }
  const std::vector<GamSmooth>& smooths() const { return smooths_; }
  const GamConfig& config() const { return config_; }
  std::size_t dim() const { return smooths_.size(); }

  /// Throws DomainError on dimension mismatch; always returns a finite value.
  double predict(const ParamVector& x) const;

  /// Elementwise predict, order-preserving.
  std::vector<double> predict_batch(std::span<const ParamVector> xs) const;

 private:
  friend GamSurrogate fit_gam(std::span<const ParamVector>, std::span<const double>,
                              const GamConfig&);

  double intercept_ = 0.0;
  std::vector<GamSmooth> smooths_;
  GamConfig config_;
};

/// Fits the penalized least-squares problem
///   min ||y - (b0 + sum_j B_j c_j)||^2 + penalty * sum_j ||D c_j||^2
/// with D the `penalty_order` difference matrix and a 1e-10 identity ridge
/// on the normal equations. Basis columns are mean-centered so the intercept
/// carries the level. Throws FitError on fewer than 2 points, mismatched or
/// non-finite inputs, or a singular system.
GamSurrogate fit_gam(std::span<const ParamVector> points, std::span<const double> losses,
                     const GamConfig& config = {});

}  // namespace homopt

#endif  // HOMOPT_GAM_HPP_
