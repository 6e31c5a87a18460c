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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "homopt/bspline.hpp"
#include "homopt/errors.hpp"
#include "homopt/gam.hpp"
#include "homopt/json_io.hpp"
#include "homopt/objectives.hpp"
#include "homopt/rng.hpp"

using namespace homopt;

namespace {

struct Dataset {
  std::vector<ParamVector> xs;
  std::vector<double> ys;
};

Dataset linear_1d() {
  Dataset d;
  for (int i = 0; i <= 10; ++i) {
    const double x = 0.1 * i;
    d.xs.push_back({x});
    d.ys.push_back(2.0 * x);
  }
  return d;
}

Dataset gramacy_lee_samples(int n, std::uint64_t seed) {
  Dataset d;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x = uniform_real(rng, 0.5, 2.5);
    d.xs.push_back({x});
    d.ys.push_back(gramacy_lee(x));
  }
  return d;
}

double training_rss(const GamSurrogate& model, const Dataset& d) {
  double rss = 0.0;
  for (std::size_t i = 0; i < d.xs.size(); ++i) {
    const double r = model.predict(d.xs[i]) - d.ys[i];
    rss += r * r;
  }
  return rss;
}

}  // namespace

TEST_CASE("basis: partition of unity, positivity, linear reproduction") {
  const int m = 25;
  const int degree = 3;
  const auto knots = open_uniform_knots(m, degree, -2.0, 3.0);
  REQUIRE(knots.size() == static_cast<std::size_t>(m + degree + 1));
  for (std::size_t i = 1; i < knots.size(); ++i) CHECK(knots[i] >= knots[i - 1]);

  // Greville abscissae reproduce the identity exactly on a spline basis
  std::vector<double> greville(m);
  for (int k = 0; k < m; ++k) {
    double s = 0.0;
    for (int j = 1; j <= degree; ++j) s += knots[static_cast<std::size_t>(k + j)];
    greville[static_cast<std::size_t>(k)] = s / degree;
  }

  for (int i = 0; i <= 200; ++i) {
    const double x = -2.0 + 5.0 * i / 200.0;
    const auto basis = bspline_basis(knots, degree, x);
    double sum = 0.0;
    double ident = 0.0;
    int nonzero = 0;
    for (int k = 0; k < m; ++k) {
      const double b = basis[static_cast<std::size_t>(k)];
      CHECK(b >= -1e-14);
      sum += b;
      ident += b * greville[static_cast<std::size_t>(k)];
      if (b != 0.0) ++nonzero;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ident == doctest::Approx(x).epsilon(1e-12));
    CHECK(nonzero <= degree + 1);
  }
}

TEST_CASE("linear data is recovered within 1e-3 at the training points") {
  const Dataset d = linear_1d();
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  for (std::size_t i = 0; i < d.xs.size(); ++i)
    CHECK(std::abs(model.predict(d.xs[i]) - d.ys[i]) < 1e-3);
  CHECK(model.predict({0.55}) == doctest::Approx(1.1).epsilon(1e-2));
}

TEST_CASE("gam matches the least-squares line on linear data") {
  // exact linear target: the OLS line is y = 2x itself
  const Dataset d = linear_1d();
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  double se = 0.0;
  for (std::size_t i = 0; i < d.xs.size(); ++i) {
    const double r = model.predict(d.xs[i]) - 2.0 * d.xs[i][0];
    se += r * r;
  }
  CHECK(std::sqrt(se / static_cast<double>(d.xs.size())) < 1e-3);
}

TEST_CASE("constant data fits flat") {
  Dataset d;
  for (int i = 0; i < 9; ++i) {
    d.xs.push_back({0.3 * i});
    d.ys.push_back(7.0);
  }
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  for (double x = 0.0; x <= 2.4; x += 0.05)
    CHECK(model.predict({x}) == doctest::Approx(7.0).epsilon(1e-8));
}

TEST_CASE("beats the best constant on a multimodal sample") {
  const Dataset d = gramacy_lee_samples(20, 11);
  double mean = 0.0;
  for (double y : d.ys) mean += y;
  mean /= static_cast<double>(d.ys.size());
  double const_rss = 0.0;
  for (double y : d.ys) const_rss += (y - mean) * (y - mean);

  const GamSurrogate model = fit_gam(d.xs, d.ys);
  CHECK(training_rss(model, d) < const_rss);
}

TEST_CASE("training error is non-decreasing in the penalty") {
  const Dataset d = gramacy_lee_samples(40, 3);
  const double lambdas[] = {0.0, 1e-4, 1.0, 1e4};
  double previous = -1.0;
  for (double lambda : lambdas) {
    GamConfig cfg;
    cfg.penalty = lambda;
    const double rss = training_rss(fit_gam(d.xs, d.ys, cfg), d);
    CHECK(rss >= previous - 1e-12 * (1.0 + rss));
    previous = rss;
  }
}

TEST_CASE("a huge penalty flattens the coefficient differences") {
  Dataset d;
  for (int i = 0; i < 60; ++i) {
    const double x = static_cast<double>(i) / 59.0;
    d.xs.push_back({x});
    d.ys.push_back(std::sin(4.0 * std::numbers::pi * x));
  }
  const auto max_second_difference = [](const GamSurrogate& model) {
    const auto& c = model.smooths()[0].coefficients;
    double worst = 0.0;
    for (std::size_t i = 0; i + 2 < c.size(); ++i)
      worst = std::max(worst, std::abs(c[i + 2] - 2.0 * c[i + 1] + c[i]));
    return worst;
  };

  GamConfig loose;
  loose.penalty = 0.0;
  GamConfig stiff;
  stiff.penalty = 1e12;
  const double d0 = max_second_difference(fit_gam(d.xs, d.ys, loose));
  const double d1 = max_second_difference(fit_gam(d.xs, d.ys, stiff));
  REQUIRE(d0 > 0.0);
  CHECK(d1 < 1e-3 * d0);
}

TEST_CASE("prediction clamps onto the training range") {
  const Dataset d = gramacy_lee_samples(25, 9);
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  const double lo = model.smooths()[0].train_lo;
  const double hi = model.smooths()[0].train_hi;
  CHECK(model.predict({lo - 5.0}) == model.predict({lo}));
  CHECK(model.predict({hi + 5.0}) == model.predict({hi}));
}

TEST_CASE("prediction varies smoothly") {
  const Dataset d = gramacy_lee_samples(30, 17);
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  const double lo = model.smooths()[0].train_lo;
  const double hi = model.smooths()[0].train_hi;

  // empirical slope bound from a dense sweep
  const int grid = 2000;
  double max_slope = 0.0;
  double prev = model.predict({lo});
  for (int i = 1; i <= grid; ++i) {
    const double x = lo + (hi - lo) * i / grid;
    const double v = model.predict({x});
    max_slope = std::max(max_slope, std::abs(v - prev) / ((hi - lo) / grid));
    prev = v;
  }
  const double bound = 1.5 * max_slope + 1e-9;

  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const double x = uniform_real(rng, lo, hi);
    const double h = uniform_real(rng, -1e-4, 1e-4);
    const double xh = std::clamp(x + h, lo, hi);
    CHECK(std::abs(model.predict({xh}) - model.predict({x})) <= bound * std::abs(xh - x) + 1e-12);
  }
}

TEST_CASE("fit is deterministic") {
  const Dataset d = gramacy_lee_samples(35, 29);
  const GamSurrogate a = fit_gam(d.xs, d.ys);
  const GamSurrogate b = fit_gam(d.xs, d.ys);
  CHECK(a.intercept() == b.intercept());
  REQUIRE(a.smooths().size() == b.smooths().size());
  for (std::size_t j = 0; j < a.smooths().size(); ++j)
    CHECK(a.smooths()[j].coefficients == b.smooths()[j].coefficients);
}

TEST_CASE("degenerate dimensions are inactive") {
  std::vector<ParamVector> xs;
  std::vector<double> ys;
  for (int i = 0; i < 10; ++i) {
    xs.push_back({static_cast<double>(i), 4.0});  // second coordinate constant
    ys.push_back(static_cast<double>(i));
  }
  const GamSurrogate model = fit_gam(xs, ys);
  CHECK(model.smooths()[0].active);
  CHECK_FALSE(model.smooths()[1].active);
  // the second coordinate has no influence
  CHECK(model.predict({3.0, 4.0}) == model.predict({3.0, -100.0}));
}

TEST_CASE("fit rejects bad input") {
  CHECK_THROWS_AS(fit_gam(std::vector<ParamVector>{{0.0}}, std::vector<double>{1.0}),
                  FitError);
  CHECK_THROWS_AS(fit_gam(std::vector<ParamVector>{{0.0}, {1.0, 2.0}},
                          std::vector<double>{1.0, 2.0}),
                  FitError);
  CHECK_THROWS_AS(
      fit_gam(std::vector<ParamVector>{{0.0}, {1.0}}, std::vector<double>{1.0, NAN}),
      FitError);
  GamConfig bad;
  bad.n_splines = 2;  // not above the cubic degree
  CHECK_THROWS_AS(fit_gam(std::vector<ParamVector>{{0.0}, {1.0}},
                          std::vector<double>{0.0, 1.0}, bad),
                  FitError);
}

TEST_CASE("predict checks the dimension") {
  const Dataset d = linear_1d();
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  CHECK_THROWS_AS(model.predict({0.1, 0.2}), DomainError);
}

TEST_CASE("batch prediction is an elementwise map") {
  const Dataset d = gramacy_lee_samples(20, 31);
  const GamSurrogate model = fit_gam(d.xs, d.ys);

  CHECK(model.predict_batch(std::vector<ParamVector>{}).empty());

  const std::vector<ParamVector> single{{1.25}};
  CHECK(model.predict_batch(single) == std::vector<double>{model.predict({1.25})});

  const std::vector<ParamVector> xs{{0.6}, {1.1}, {2.2}};
  const std::vector<ParamVector> permuted{{2.2}, {0.6}, {1.1}};
  const auto a = model.predict_batch(xs);
  const auto b = model.predict_batch(permuted);
  CHECK(a[0] == b[1]);
  CHECK(a[1] == b[2]);
  CHECK(a[2] == b[0]);
}

TEST_CASE("debug dump carries the model pieces") {
  const Dataset d = linear_1d();
  const GamSurrogate model = fit_gam(d.xs, d.ys);
  const nlohmann::json dump = gam_to_json(model);
  CHECK(dump["intercept"].is_number());
  CHECK(dump["smooths"].size() == 1);
  CHECK(dump["smooths"][0]["knots"].size() ==
        static_cast<std::size_t>(model.config().n_splines + model.config().spline_degree + 1));
  CHECK(dump["smooths"][0]["coefficients"].size() ==
        static_cast<std::size_t>(model.config().n_splines));
}
