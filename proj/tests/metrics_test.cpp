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

#include <cstdio>
#include <filesystem>

#include "homopt/errors.hpp"
#include "homopt/metrics.hpp"
#include "homopt/rng.hpp"

using namespace homopt;

TEST_CASE("regret follows the running best relative to the reference") {
  const std::vector<double> losses{0.5, 0.3, 0.4};
  const RegretTrace trace = regret(losses, 0.3);
  CHECK(trace.per_iteration == std::vector<double>{0.2, 0.0, 0.0});

  const std::vector<double> flat{2.0, 2.0, 2.0};
  CHECK(regret(flat, 2.0).per_iteration == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("regret traces are non-increasing and ignore later worse losses") {
  Rng rng(4);
  std::vector<double> losses;
  for (int i = 0; i < 100; ++i) losses.push_back(uniform_real(rng, 0.0, 1.0));
  const RegretTrace trace = regret(losses, -1.0);
  for (std::size_t t = 1; t < trace.per_iteration.size(); ++t)
    CHECK(trace.per_iteration[t] <= trace.per_iteration[t - 1]);

  auto extended = losses;
  extended.push_back(1e6);  // worse than anything seen
  const RegretTrace longer = regret(extended, -1.0);
  CHECK(longer.per_iteration[losses.size()] == trace.per_iteration.back());
}

TEST_CASE("a pooled minimum keeps both traces non-negative") {
  const std::vector<double> run_a{0.9, 0.5, 0.7};
  const std::vector<double> run_b{0.6, 0.4, 0.8};
  double pooled = 1e300;
  for (double v : run_a) pooled = std::min(pooled, v);
  for (double v : run_b) pooled = std::min(pooled, v);

  for (const auto& run : {run_a, run_b}) {
    const RegretTrace trace = regret(run, pooled);
    for (double r : trace.per_iteration) CHECK(r >= 0.0);
  }
}

TEST_CASE("negative regret is reported as-is when the reference is above") {
  const RegretTrace trace = regret(std::vector<double>{0.5}, 0.7);
  CHECK(trace.per_iteration[0] == doctest::Approx(-0.2));
}

TEST_CASE("regret rejects empty or non-finite input") {
  CHECK_THROWS_AS(regret(std::vector<double>{}, 0.0), Error);
  CHECK_THROWS_AS(regret(std::vector<double>{1.0, NAN}, 0.0), Error);
}

TEST_CASE("percent improvement on the worked examples") {
  const ImprovementSummary single =
      percent_improvement(std::vector<double>{0.4}, std::vector<double>{0.3});
  CHECK(single.percent_improvement == doctest::Approx(25.0));
  CHECK(single.standard_error == 0.0);
  CHECK(single.n_seeds == 1);

  const ImprovementSummary equal =
      percent_improvement(std::vector<double>{0.4, 0.7}, std::vector<double>{0.4, 0.7});
  CHECK(equal.percent_improvement == doctest::Approx(0.0));
  CHECK(equal.standard_error == doctest::Approx(0.0));

  const ImprovementSummary two =
      percent_improvement(std::vector<double>{0.5, 0.4}, std::vector<double>{0.4, 0.4});
  CHECK(two.percent_improvement == doctest::Approx(10.0));
  CHECK(two.standard_error == doctest::Approx(10.0));
  CHECK(two.n_seeds == 2);
}

TEST_CASE("zero-base seeds are excluded with a count") {
  const ImprovementSummary s =
      percent_improvement(std::vector<double>{0.0, 0.4}, std::vector<double>{0.1, 0.2});
  CHECK(s.n_seeds == 1);
  CHECK(s.n_excluded == 1);
  CHECK(s.percent_improvement == doctest::Approx(50.0));

  CHECK_THROWS_AS(
      percent_improvement(std::vector<double>{0.0}, std::vector<double>{0.1}), Error);
  CHECK_THROWS_AS(
      percent_improvement(std::vector<double>{0.1, 0.2}, std::vector<double>{0.1}),
      Error);
}

TEST_CASE("elementwise-better augmented runs score positive on positive bases") {
  Rng rng(13);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> base;
    std::vector<double> aug;
    for (int i = 0; i < 5; ++i) {
      const double b = uniform_real(rng, 0.1, 2.0);
      base.push_back(b);
      aug.push_back(b - uniform_real(rng, 0.0, 0.09));
    }
    CHECK(percent_improvement(base, aug).percent_improvement > 0.0);
  }
}

TEST_CASE("trial CSV round-trips through write and read") {
  std::vector<TrialRecord> records;
  Rng rng(3);
  for (int i = 0; i < 25; ++i) {
    TrialRecord r;
    r.run_id = "homopt+random-s1";
    r.seed = 1;
    r.method = "homopt+random";
    r.trial_index = i;
    r.branch = i % 2 == 0 ? "warmup" : "homotopy";
    r.loss = uniform_real(rng, -1.0, 1.0);
    r.best_so_far = -std::abs(r.loss);
    r.regret = r.best_so_far + 1.0;
    r.elapsed_s = 0.001 * i;
    records.push_back(std::move(r));
  }

  const std::string path =
      (std::filesystem::temp_directory_path() / "homopt_metrics_test.csv").string();
  write_trial_csv(path, records);
  const auto loaded = read_trial_csv(path);
  REQUIRE(loaded.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(loaded[i].run_id == records[i].run_id);
    CHECK(loaded[i].seed == records[i].seed);
    CHECK(loaded[i].method == records[i].method);
    CHECK(loaded[i].trial_index == records[i].trial_index);
    CHECK(loaded[i].branch == records[i].branch);
    CHECK(loaded[i].loss == records[i].loss);  // %.17g survives the round trip
    CHECK(loaded[i].best_so_far == records[i].best_so_far);
    CHECK(loaded[i].regret == records[i].regret);
    CHECK(loaded[i].elapsed_s == records[i].elapsed_s);
  }
  std::remove(path.c_str());
}

TEST_CASE("the CSV reader rejects foreign headers") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "homopt_bad_header.csv").string();
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("a,b,c\n1,2,3\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_trial_csv(path), Error);
  std::remove(path.c_str());
}
