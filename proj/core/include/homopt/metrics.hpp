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

#ifndef HOMOPT_METRICS_HPP_
#define HOMOPT_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace homopt {

/// Simple-regret trace: best loss so far at each iteration minus a pooled
/// reference minimum. Negative values (a reference above the observed best)
/// are reported as-is rather than clamped.
struct RegretTrace {
  std::vector<double> per_iteration;
  double global_min = 0.0;
};

RegretTrace regret(std::span<const double> losses, double global_min);

/// Cross-seed summary of 100 * (base - augmented) / base on the final best
/// losses. Seeds with a zero base value are excluded and counted.
struct ImprovementSummary {
  double percent_improvement = 0.0;
  double standard_error = 0.0;  // sample std / sqrt(n_seeds); 0 for one seed
  int n_seeds = 0;
  int n_excluded = 0;
};

ImprovementSummary percent_improvement(std::span<const double> base_finals,
                                       std::span<const double> augmented_finals);

/// One CSV row of the per-trial experiment log.
struct TrialRecord {
  std::string run_id;
  std::uint64_t seed = 0;
  std::string method;
  int trial_index = 0;
  std::string branch;
  double loss = 0.0;
  double best_so_far = 0.0;
  double regret = 0.0;
  double elapsed_s = 0.0;
};

extern const char* const kTrialCsvHeader;

void write_trial_csv(const std::string& path, std::span<const TrialRecord> records);
std::vector<TrialRecord> read_trial_csv(const std::string& path);

}  // namespace homopt

#endif  // HOMOPT_METRICS_HPP_
