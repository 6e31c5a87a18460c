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

#include <chrono>
#include <cmath>
#include <numbers>

#include "homopt/errors.hpp"
#include "homopt/objectives.hpp"
#include "homopt/rng.hpp"

using namespace homopt;

TEST_CASE("gramacy-lee hits the constructed zeros") {
  CHECK(std::abs(gramacy_lee(1.0)) < 1e-14);            // sin(10*pi) = 0, (1-1)^4 = 0
  CHECK(gramacy_lee(0.5) == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK_THROWS_AS(gramacy_lee(0.49), DomainError);
  CHECK_THROWS_AS(gramacy_lee(2.51), DomainError);
}

TEST_CASE("gramacy-lee is finite and continuous on the domain") {
  double previous = gramacy_lee(0.5);
  for (int i = 1; i <= 20000; ++i) {
    const double x = 0.5 + 2.0 * i / 20000.0;
    const double v = gramacy_lee(x);
    CHECK(std::isfinite(v));
    CHECK(std::abs(v - previous) < 0.01);  // step 1e-4, slope bounded by ~35
    previous = v;
  }
}

TEST_CASE("gramacy-lee global minimizer sits in the leftmost basin") {
  // dense grid plus golden-section refinement
  const int n = 1000000;
  double best_x = 0.5;
  double best_v = gramacy_lee(0.5);
  for (int i = 1; i <= n; ++i) {
    const double x = 0.5 + 2.0 * i / n;
    const double v = gramacy_lee(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double a = std::max(0.5, best_x - 2.0 / n);
  double b = std::min(2.5, best_x + 2.0 / n);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - phi * (b - a);
    const double d = a + phi * (b - a);
    if (gramacy_lee(c) < gramacy_lee(d))
      b = d;
    else
      a = c;
  }
  const double x_star = 0.5 * (a + b);
  CHECK(x_star > 0.53);
  CHECK(x_star < 0.57);
  CHECK(gramacy_lee(x_star) <= best_v);
  CHECK(gramacy_lee(x_star) < -0.85);
}

TEST_CASE("modified griewank vanishes at the shifted optimum") {
  CHECK(modified_griewank(5.0, -3.0) == 0.0);
  CHECK_THROWS_AS(modified_griewank(-20.5, 0.0), DomainError);
  CHECK_THROWS_AS(modified_griewank(0.0, 20.5), DomainError);
}

TEST_CASE("modified griewank agrees with an independent evaluation") {
  // second evaluation path with long-double accumulation
  const auto reference = [](double x, double y) {
    const long double u = static_cast<long double>(x) - 5.0L;
    const long double v = static_cast<long double>(y) + 3.0L;
    const long double quad = (u * u + v * v) / 40.0L;
    const long double wave =
        std::cos(static_cast<double>(u)) *
        std::cos(static_cast<double>(v) / std::numbers::sqrt2);
    return static_cast<double>(quad - wave + 1.0L);
  };
  CHECK(modified_griewank(5.0 + std::numbers::pi, -3.0) ==
        doctest::Approx(reference(5.0 + std::numbers::pi, -3.0)).epsilon(1e-12));
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const double x = uniform_real(rng, -20.0, 20.0);
    const double y = uniform_real(rng, -20.0, 20.0);
    CHECK(modified_griewank(x, y) == doctest::Approx(reference(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("modified griewank is even in x about the shift") {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const double a = uniform_real(rng, 0.0, 15.0);
    CHECK(modified_griewank(5.0 + a, -3.0) ==
          doctest::Approx(modified_griewank(5.0 - a, -3.0)).epsilon(1e-12));
  }
}

TEST_CASE("grid search confirms the global minimum location") {
  double best = 1e300;
  double best_x = 0.0;
  double best_y = 0.0;
  const int n = 2000;  // 2001 x 2001 grid on [-20, 20]^2
  for (int i = 0; i <= n; ++i) {
    const double x = -20.0 + 40.0 * i / n;
    for (int j = 0; j <= n; ++j) {
      const double y = -20.0 + 40.0 * j / n;
      const double v = modified_griewank(x, y);
      if (v < best) {
        best = v;
        best_x = x;
        best_y = y;
      }
    }
  }
  CHECK(std::abs(best) < 1e-9);
  CHECK(best_x == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(best_y == doctest::Approx(-3.0).epsilon(1e-6));
}

TEST_CASE("builtin registry exposes both curves") {
  CHECK(builtin_objective_names().size() == 2);
  const Objective gl = builtin_objective("gramacy_lee");
  CHECK(gl.space.dim() == 1);
  CHECK(std::get<double>(gl.space.decode({1.0}).at("x")) == 1.0);
  const Objective gw = builtin_objective("griewank_modified");
  CHECK(gw.space.dim() == 2);
  CHECK_THROWS_AS(builtin_objective("rastrigin"), ConfigError);

  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    CHECK(std::isfinite(gl.eval(gl.space.decode(gl.space.sample_uniform(rng)))));
    CHECK(std::isfinite(gw.eval(gw.space.decode(gw.space.sample_uniform(rng)))));
  }
}

TEST_CASE("external objective matches the builtin through the protocol") {
  const Objective builtin = builtin_objective("gramacy_lee");
  const Objective external = external_objective(std::string(STUB_PATH) + " gl",
                                                builtin.space, 30.0);
  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    const ParamAssignment a = builtin.space.decode(builtin.space.sample_uniform(rng));
    CHECK(std::abs(external.eval(a) - builtin.eval(a)) <= 1e-12);
  }
}

TEST_CASE("external objective error paths raise EvalError") {
  const SearchSpace space = SearchSpace({{"x", ContinuousDomain{0.5, 2.5, false}}});
  const ParamAssignment point{{"x", 1.0}};

  CHECK(external_objective(std::string(STUB_PATH) + " const", space, 30.0).eval(point) ==
        0.5);
  CHECK_THROWS_AS(
      external_objective(std::string(STUB_PATH) + " crash", space, 30.0).eval(point),
      EvalError);
  CHECK_THROWS_AS(
      external_objective(std::string(STUB_PATH) + " malformed", space, 30.0).eval(point),
      EvalError);
  CHECK_THROWS_AS(external_objective("/nonexistent-command-xyz", space, 30.0).eval(point),
                  EvalError);
}

TEST_CASE("external objective enforces its timeout") {
  const SearchSpace space = SearchSpace({{"x", ContinuousDomain{0.5, 2.5, false}}});
  const Objective slow = external_objective(std::string(STUB_PATH) + " sleep", space, 0.3);
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(slow.eval({{"x", 1.0}}), EvalError);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(elapsed < 5.0);
}
