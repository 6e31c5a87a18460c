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

#include "homopt/errors.hpp"
#include "homopt/samplers.hpp"

using namespace homopt;

namespace {

SearchSpace unit_square() {
  return SearchSpace({{"x", ContinuousDomain{0.0, 1.0, false}},
                      {"y", ContinuousDomain{0.0, 1.0, false}}});
}

TrialHistory random_history(const SearchSpace& space, int n, std::uint64_t seed,
                            double loss_shift = 0.0) {
  TrialHistory history;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    ParamVector x = space.sample_uniform(rng);
    const double loss = uniform_real(rng, -1.0, 1.0) + loss_shift;
    history.append(std::move(x), loss, TrialBranch::kWarmup);
  }
  return history;
}

bool in_box(const ParamVector& x, const Box& box) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < box.lo[j] || x[j] > box.hi[j]) return false;
  return true;
}

}  // namespace

TEST_CASE("random proposals replay under the same seed") {
  const SearchSpace space = unit_square();
  const TrialHistory history = random_history(space, 5, 1);
  SamplerState a(9);
  SamplerState b(9);
  for (int i = 0; i < 20; ++i)
    CHECK(propose(RandomSamplerConfig{}, a, history, space) ==
          propose(RandomSamplerConfig{}, b, history, space));
}

TEST_CASE("the quantile split takes exactly the 20 lowest of 100 at gamma 0.2") {
  const SearchSpace space = unit_square();
  TrialHistory history;
  Rng rng(3);
  for (int i = 0; i < 100; ++i)
    history.append(space.sample_uniform(rng), uniform_real(rng, 0.0, 1.0),
                   TrialBranch::kWarmup);

  const TpeSplit split = tpe_split(history, 0.20);
  REQUIRE(split.good.size() == 20);
  REQUIRE(split.bad.size() == 80);

  // every good trial is no worse than every bad trial
  double worst_good = -1e300;
  double best_bad = 1e300;
  for (std::size_t idx : split.good)
    worst_good = std::max(worst_good, history.trials()[idx].loss);
  for (std::size_t idx : split.bad)
    best_bad = std::min(best_bad, history.trials()[idx].loss);
  CHECK(worst_good <= best_bad);
}

TEST_CASE("the split breaks loss ties by completion order") {
  const SearchSpace space = SearchSpace({{"x", ContinuousDomain{0.0, 1.0, false}}});
  TrialHistory history;
  for (int i = 0; i < 10; ++i)
    history.append({0.1 * i}, 1.0, TrialBranch::kWarmup);  // all losses equal
  const TpeSplit split = tpe_split(history, 0.20);
  REQUIRE(split.good.size() == 2);
  CHECK(split.good[0] == 0);
  CHECK(split.good[1] == 1);
}

TEST_CASE("tpe falls back to uniform before startup") {
  const SearchSpace space = unit_square();
  const TrialHistory history = random_history(space, 4, 7);
  TpeSamplerConfig cfg;  // n_startup = 10
  SamplerState state(55);
  Rng reference(55);
  for (int i = 0; i < 5; ++i)
    CHECK(propose(cfg, state, history, space) == space.sample_uniform(reference));
}

TEST_CASE("tpe proposals stay inside the box") {
  const SearchSpace space = unit_square();
  TpeSamplerConfig cfg;
  SamplerState state(17);
  int checked = 0;
  for (int h = 0; h < 100; ++h) {
    const TrialHistory history = random_history(space, 12 + h % 40, 1000 + h);
    for (int i = 0; i < 100; ++i) {
      CHECK(in_box(propose(cfg, state, history, space), space.bounds()));
      ++checked;
    }
  }
  CHECK(checked == 10000);
}

TEST_CASE("tpe selection ignores a constant loss shift") {
  const SearchSpace space = unit_square();
  TpeSamplerConfig cfg;
  for (double shift : {0.0, 5.0, -123.25}) {
    const TrialHistory base = random_history(space, 40, 77);
    const TrialHistory shifted = random_history(space, 40, 77, shift);
    SamplerState a(31);
    SamplerState b(31);
    const ParamVector pa = propose(cfg, a, base, space);
    const ParamVector pb = propose(cfg, b, shifted, space);
    CHECK(pa == pb);
  }
}

TEST_CASE("tpe replays under seed and history") {
  const SearchSpace space = unit_square();
  const TrialHistory history = random_history(space, 50, 8);
  TpeSamplerConfig cfg;
  SamplerState a(123);
  SamplerState b(123);
  for (int i = 0; i < 10; ++i)
    CHECK(propose(cfg, a, history, space) == propose(cfg, b, history, space));
}

TEST_CASE("gp proposals equal the uniform stream before startup") {
  const SearchSpace space = unit_square();
  const TrialHistory history = random_history(space, 5, 4);
  BayesSamplerConfig cfg;  // n_startup = 20
  SamplerState state(99);
  Rng reference(99);
  for (int i = 0; i < 1000; ++i)
    CHECK(propose(cfg, state, history, space) == space.sample_uniform(reference));
}

TEST_CASE("gp startup draws look uniform (chi-squared over 10 bins)") {
  const SearchSpace space = SearchSpace({{"x", ContinuousDomain{0.0, 1.0, false}}});
  const TrialHistory history = random_history(space, 3, 21);
  BayesSamplerConfig cfg;
  SamplerState state(2024);
  int counts[10] = {};
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const ParamVector x = propose(cfg, state, history, space);
    ++counts[std::min(9, static_cast<int>(x[0] * 10.0))];
  }
  double stat = 0.0;
  for (int bin = 0; bin < 10; ++bin) {
    const double expected = n / 10.0;
    stat += (counts[bin] - expected) * (counts[bin] - expected) / expected;
  }
  CHECK(stat < 21.67);  // 99% quantile, 9 degrees of freedom
}

TEST_CASE("gp proposals stay inside the box and replay deterministically") {
  const SearchSpace space = unit_square();
  BayesSamplerConfig cfg;
  SamplerState a(5);
  SamplerState b(5);
  int checked = 0;
  for (int h = 0; h < 50; ++h) {
    const TrialHistory history = random_history(space, 25 + h % 10, 500 + h);
    for (int i = 0; i < 200; ++i) {
      const ParamVector pa = propose(cfg, a, history, space);
      CHECK(in_box(pa, space.bounds()));
      CHECK(pa == propose(cfg, b, history, space));
      ++checked;
    }
  }
  CHECK(checked == 10000);
}

TEST_CASE("expected improvement matches a quadrature oracle") {
  // EI(mu, sigma; best) = integral of max(best - y, 0) under N(mu, sigma^2)
  const auto quadrature = [](double mu, double sigma, double best) {
    const int n = 200000;
    const double lo = mu - 10.0 * sigma;
    const double hi = best;  // integrand vanishes above the incumbent
    if (hi <= lo) return 0.0;
    const double h = (hi - lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double y = lo + h * i;
      const double z = (y - mu) / sigma;
      const double density = std::exp(-0.5 * z * z) /
                             (sigma * std::sqrt(2.0 * std::numbers::pi));
      const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
      sum += weight * (best - y) * density;
    }
    return sum * h;
  };

  CHECK(expected_improvement(0.0, 1.0, 0.0) ==
        doctest::Approx(quadrature(0.0, 1.0, 0.0)).epsilon(1e-6));
  CHECK(expected_improvement(0.5, 0.3, 0.0) ==
        doctest::Approx(quadrature(0.5, 0.3, 0.0)).epsilon(1e-6));
  CHECK(expected_improvement(-1.0, 2.0, -0.5) ==
        doctest::Approx(quadrature(-1.0, 2.0, -0.5)).epsilon(1e-6));
}

TEST_CASE("expected improvement is non-negative and vanishes at the incumbent") {
  CHECK(expected_improvement(0.7, 0.0, 0.7) == 0.0);
  CHECK(expected_improvement(1.5, 0.0, 0.7) == 0.0);  // worse mean, no spread
  for (double mu = -2.0; mu <= 2.0; mu += 0.25)
    for (double sigma : {0.0, 0.1, 1.0, 10.0})
      CHECK(expected_improvement(mu, sigma, 0.0) >= 0.0);
}

TEST_CASE("external sampler speaks the stdio protocol") {
  const SearchSpace space =
      SearchSpace({{"x", ContinuousDomain{2.0, 4.0, false}},
                   {"n", IntegerDomain{1, 9}},
                   {"m", CategoricalDomain{{"alpha", "beta"}}}});
  const TrialHistory history = random_history(
      SearchSpace({{"x", ContinuousDomain{2.0, 4.0, false}},
                   {"n", IntegerDomain{1, 9}},
                   {"m", CategoricalDomain{{"alpha", "beta"}}}}),
      3, 6);

  ExternalSamplerConfig cfg;
  cfg.command = std::string(STUB_PATH) + " sampler-center";
  cfg.timeout_s = 20.0;
  SamplerState state(1);
  const ParamVector x = propose(SamplerConfig{cfg}, state, history, space);
  CHECK(x[0] == doctest::Approx(3.0));  // continuous center
  CHECK(x[1] == 1.0);                   // integer lo
  CHECK(x[2] == 0.0);                   // first label
}

TEST_CASE("external sampler failures surface as EvalError") {
  const SearchSpace space = unit_square();
  const TrialHistory history = random_history(space, 3, 2);
  SamplerState state(1);

  ExternalSamplerConfig crash;
  crash.command = std::string(STUB_PATH) + " crash";
  crash.timeout_s = 20.0;
  CHECK_THROWS_AS(propose(SamplerConfig{crash}, state, history, space), EvalError);

  ExternalSamplerConfig malformed;
  malformed.command = std::string(STUB_PATH) + " malformed";
  malformed.timeout_s = 20.0;
  CHECK_THROWS_AS(propose(SamplerConfig{malformed}, state, history, space), EvalError);
}

TEST_CASE("propose rejects an empty space") {
  SamplerState state(1);
  TrialHistory history;
  CHECK_THROWS_AS(propose(RandomSamplerConfig{}, state, history, SearchSpace{}),
                  DomainError);
}
