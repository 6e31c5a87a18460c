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

#include "homopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "homopt/errors.hpp"
#include "homopt/json_io.hpp"
#include "homopt/log.hpp"
#include "homopt/metrics.hpp"

namespace homopt {

namespace {

namespace fs = std::filesystem;

struct Series {
  std::vector<double> mean;
  std::vector<double> se;
};

MethodRuns run_method(const RunConfig& config, const std::string& method,
                      const Objective& objective) {
  const bool augment = method_uses_homopt(method);
  MethodRuns out;
  out.method = method;
  out.runs.resize(config.seeds.size());

  const unsigned n_workers = std::max(
      1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                             static_cast<unsigned>(config.seeds.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(config.seeds.size());

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.seeds.size()) return;
      try {
        SeedRun run;
        run.seed = config.seeds[i];
        const DriverConfig driver = make_driver_config(config, augment, run.seed);
        run.history = run_optimization(
            objective.eval, objective.space, driver,
            [&run](const TrialEvent& e) { run.elapsed_s.push_back(e.elapsed_s); });
        out.runs[i] = std::move(run);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

Series regret_series(const MethodRuns& method, double pooled_min) {
  std::size_t length = std::numeric_limits<std::size_t>::max();
  for (const auto& run : method.runs) length = std::min(length, run.history.size());
  if (length == std::numeric_limits<std::size_t>::max()) length = 0;

  Series series;
  series.mean.resize(length, 0.0);
  series.se.resize(length, 0.0);
  const auto n = static_cast<double>(method.runs.size());
  for (std::size_t t = 0; t < length; ++t) {
    double mean = 0.0;
    for (const auto& run : method.runs)
      mean += run.history.best_so_far(t) - pooled_min;
    mean /= n;
    double ss = 0.0;
    for (const auto& run : method.runs) {
      const double d = run.history.best_so_far(t) - pooled_min - mean;
      ss += d * d;
    }
    series.mean[t] = mean;
    series.se[t] = method.runs.size() > 1
                       ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n)
                       : 0.0;
  }
  return series;
}

std::string render_regret_svg(const std::vector<std::pair<std::string, Series>>& curves);

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  const Objective objective = make_objective(config);

  std::vector<std::string> methods{config.method};
  if (config.compare) methods.push_back(method_base(config.method));

  ExperimentResult result;
  result.output_dir = config.output;
  for (const auto& method : methods) {
    log_info("running method " + method + " on " + objective.name + " (" +
             std::to_string(config.seeds.size()) + " seeds x " +
             std::to_string(config.trials) + " trials)");
    result.methods.push_back(run_method(config, method, objective));
  }

  double pooled_min = std::numeric_limits<double>::infinity();
  for (const auto& method : result.methods)
    for (const auto& run : method.runs)
      for (const auto& trial : run.history.trials())
        pooled_min = std::min(pooled_min, trial.loss);
  result.pooled_min = pooled_min;

  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) throw Error("cannot create output directory " + config.output);

  for (const auto& method : result.methods) {
    std::vector<TrialRecord> records;
    for (const auto& run : method.runs) {
      for (const auto& trial : run.history.trials()) {
        TrialRecord r;
        r.run_id = method.method + "-s" + std::to_string(run.seed);
        r.seed = run.seed;
        r.method = method.method;
        r.trial_index = trial.index;
        r.branch = branch_name(trial.branch);
        r.loss = trial.loss;
        r.best_so_far = run.history.best_so_far(static_cast<std::size_t>(trial.index));
        r.regret = r.best_so_far - pooled_min;
        r.elapsed_s = run.elapsed_s[static_cast<std::size_t>(trial.index)];
        records.push_back(std::move(r));
      }
    }
    const std::string path = (fs::path(config.output) / (method.method + ".csv")).string();
    write_trial_csv(path, records);
    result.csv_paths.push_back(path);
  }

  nlohmann::json summary;
  summary["objective"] = objective.name;
  summary["trials"] = config.trials;
  summary["seeds"] = config.seeds;
  summary["pooled_global_min"] = pooled_min;
  summary["methods"] = nlohmann::json::object();

  std::vector<std::pair<std::string, Series>> curves;
  for (const auto& method : result.methods) {
    std::vector<double> finals;
    double best_loss = std::numeric_limits<double>::infinity();
    const SeedRun* best_run = nullptr;
    for (const auto& run : method.runs) {
      finals.push_back(run.history.best().loss);
      if (finals.back() < best_loss) {
        best_loss = finals.back();
        best_run = &run;
      }
    }
    double mean = 0.0;
    for (double v : finals) mean += v;
    mean /= static_cast<double>(finals.size());
    double se = 0.0;
    if (finals.size() > 1) {
      double ss = 0.0;
      for (double v : finals) ss += (v - mean) * (v - mean);
      se = std::sqrt(ss / static_cast<double>(finals.size() - 1)) /
           std::sqrt(static_cast<double>(finals.size()));
    }

    const Series series = regret_series(method, pooled_min);
    double auc = 0.0;
    for (double v : series.mean) auc += v;

    nlohmann::json entry;
    entry["final_best"] = {{"per_seed", finals}, {"mean", mean}, {"se", se}};
    entry["best_loss"] = best_loss;
    entry["best_params"] =
        assignment_to_json(objective.space.decode(best_run->history.best().params));
    entry["mean_regret"] = series.mean;
    entry["mean_regret_auc"] = auc;
    summary["methods"][method.method] = std::move(entry);
    curves.emplace_back(method.method, series);
  }

  if (config.compare && result.methods.size() == 2) {
    std::vector<double> aug_finals;
    std::vector<double> base_finals;
    for (const auto& run : result.methods[0].runs)
      aug_finals.push_back(run.history.best().loss);
    for (const auto& run : result.methods[1].runs)
      base_finals.push_back(run.history.best().loss);
    try {
      const ImprovementSummary imp = percent_improvement(base_finals, aug_finals);
      summary["improvement_vs_base"] = {{"percent", imp.percent_improvement},
                                        {"standard_error", imp.standard_error},
                                        {"n_seeds", imp.n_seeds},
                                        {"n_excluded", imp.n_excluded}};
    } catch (const Error& e) {
      summary["improvement_vs_base"] = {{"error", e.what()}};
    }
  }

  result.summary = summary;
  result.summary_path = (fs::path(config.output) / "summary.json").string();
  {
    std::ofstream out(result.summary_path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + result.summary_path);
    out << summary.dump(2) << "\n";
  }

  if (config.svg) {
    result.svg_path = (fs::path(config.output) / "regret.svg").string();
    std::ofstream out(result.svg_path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + result.svg_path);
    out << render_regret_svg(curves);
  }
  return result;
}

namespace {

// Minimal hand-rolled chart: mean regret per iteration with a +/- SE band,
// log10 vertical axis.
std::string render_regret_svg(const std::vector<std::pair<std::string, Series>>& curves) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 440.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 30.0;
  constexpr double kBottom = 50.0;
  constexpr double kFloor = 1e-12;
  const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};

  std::size_t max_len = 1;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [name, series] : curves) {
    max_len = std::max(max_len, series.mean.size());
    for (std::size_t t = 0; t < series.mean.size(); ++t) {
      const double low = std::max(kFloor, series.mean[t] - series.se[t]);
      const double high = std::max(kFloor, series.mean[t] + series.se[t]);
      lo = std::min(lo, std::log10(low));
      hi = std::max(hi, std::log10(high));
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = -1.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-9) {
    lo -= 1.0;
    hi += 1.0;
  }

  const auto x_of = [&](std::size_t t) {
    return kLeft + (kWidth - kLeft - kRight) * static_cast<double>(t) /
                       static_cast<double>(std::max<std::size_t>(1, max_len - 1));
  };
  const auto y_of = [&](double value) {
    const double z = (std::log10(std::max(kFloor, value)) - lo) / (hi - lo);
    return kHeight - kBottom - z * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">iteration</text>\n";
  svg << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << (kTop + kHeight - kBottom) / 2 << ")\">mean simple regret (log scale)</text>\n";

  for (int tick = static_cast<int>(std::ceil(lo)); tick <= static_cast<int>(std::floor(hi));
       ++tick) {
    const double y = y_of(std::pow(10.0, tick));
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << tick << "</text>\n";
  }

  std::size_t color = 0;
  for (const auto& [name, series] : curves) {
    const char* stroke = palette[color % 4];
    if (!series.mean.empty()) {
      std::ostringstream band;
      for (std::size_t t = 0; t < series.mean.size(); ++t)
        band << x_of(t) << "," << y_of(series.mean[t] + series.se[t]) << " ";
      for (std::size_t t = series.mean.size(); t-- > 0;)
        band << x_of(t) << "," << y_of(std::max(kFloor, series.mean[t] - series.se[t]))
             << " ";
      svg << "<polygon points=\"" << band.str() << "\" fill=\"" << stroke
          << "\" opacity=\"0.15\" stroke=\"none\"/>\n";

      std::ostringstream line;
      for (std::size_t t = 0; t < series.mean.size(); ++t)
        line << x_of(t) << "," << y_of(series.mean[t]) << " ";
      svg << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"1.8\"/>\n";
    }
    const double ly = kTop + 16.0 * static_cast<double>(color);
    svg << "<line x1=\"" << kWidth - kRight - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kRight - 126 << "\" y2=\"" << ly << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kWidth - kRight - 120 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << name << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

}  // namespace homopt
