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

#include "homopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "homopt/errors.hpp"
#include "homopt/log.hpp"

namespace homopt {

const char* const kTrialCsvHeader =
    "run_id,seed,method,trial_index,branch,loss,best_so_far,regret,elapsed_s";

RegretTrace regret(std::span<const double> losses, double global_min) {
  if (losses.empty()) throw Error("regret: losses must be non-empty");
  for (double v : losses)
    if (!std::isfinite(v)) throw Error("regret: losses must be finite");

  RegretTrace trace;
  trace.global_min = global_min;
  trace.per_iteration.reserve(losses.size());
  double best = losses[0];
  for (double v : losses) {
    best = std::min(best, v);
    trace.per_iteration.push_back(best - global_min);
  }
  return trace;
}

ImprovementSummary percent_improvement(std::span<const double> base_finals,
                                       std::span<const double> augmented_finals) {
  if (base_finals.size() != augmented_finals.size())
    throw Error("percent_improvement: seed lists must be equal length");
  if (base_finals.empty()) throw Error("percent_improvement: no seeds");

  std::vector<double> improvements;
  improvements.reserve(base_finals.size());
  int excluded = 0;
  for (std::size_t i = 0; i < base_finals.size(); ++i) {
    if (base_finals[i] == 0.0) {
      ++excluded;
      log_warn("percent_improvement: excluding seed " + std::to_string(i) +
               " with zero base loss");
      continue;
    }
    improvements.push_back(100.0 * (base_finals[i] - augmented_finals[i]) /
                           base_finals[i]);
  }
  if (improvements.empty())
    throw Error("percent_improvement: every seed had a zero base loss");

  const auto n = improvements.size();
  double mean = 0.0;
  for (double v : improvements) mean += v;
  mean /= static_cast<double>(n);

  double se = 0.0;
  if (n > 1) {
    double ss = 0.0;
    for (double v : improvements) ss += (v - mean) * (v - mean);
    se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }

  ImprovementSummary out;
  out.percent_improvement = mean;
  out.standard_error = se;
  out.n_seeds = static_cast<int>(n);
  out.n_excluded = excluded;
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_trial_csv(const std::string& path, std::span<const TrialRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << kTrialCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.run_id << ',' << r.seed << ',' << r.method << ',' << r.trial_index << ','
        << r.branch << ',' << format_double(r.loss) << ',' << format_double(r.best_so_far)
        << ',' << format_double(r.regret) << ',' << format_double(r.elapsed_s) << "\n";
  }
  if (!out) throw Error("write failed: " + path);
}

std::vector<TrialRecord> read_trial_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrialCsvHeader) throw Error("unexpected CSV header in " + path);

  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 9) throw Error("malformed CSV row in " + path + ": " + line);
    TrialRecord r;
    r.run_id = fields[0];
    r.seed = std::stoull(fields[1]);
    r.method = fields[2];
    r.trial_index = std::stoi(fields[3]);
    r.branch = fields[4];
    r.loss = std::stod(fields[5]);
    r.best_so_far = std::stod(fields[6]);
    r.regret = std::stod(fields[7]);
    r.elapsed_s = std::stod(fields[8]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace homopt
