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

#include "homopt/config.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "homopt/errors.hpp"
#include "homopt/json_io.hpp"

namespace homopt {

namespace {

using nlohmann::json;

constexpr const char* kHomoptPrefix = "homopt+";

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end())
      throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number())
    throw ConfigError(where + "." + key + " must be a number");
  return obj.at(key).get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number_integer())
    throw ConfigError(where + "." + key + " must be an integer");
  return obj.at(key).get<int>();
}

void parse_objective(const json& j, RunConfig* cfg) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    const auto& names = builtin_objective_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw ConfigError("objective: unknown builtin \"" + name + "\"");
    cfg->objective.builtin = name;
    return;
  }
  if (!j.is_object())
    throw ConfigError("objective must be a builtin name or {\"command\": ...}");
  reject_unknown_keys(j, {"command", "timeout_s"}, "objective");
  if (!j.contains("command") || !j["command"].is_string() ||
      j["command"].get<std::string>().empty())
    throw ConfigError("objective.command must be a non-empty string");
  cfg->objective.command = j["command"].get<std::string>();
  if (j.contains("timeout_s")) {
    cfg->objective.timeout_s = require_number(j, "timeout_s", "objective");
    if (!(cfg->objective.timeout_s > 0.0))
      throw ConfigError("objective.timeout_s must be > 0");
  }
}

void parse_method(const json& root, RunConfig* cfg) {
  if (root.contains("method")) {
    if (!root["method"].is_string()) throw ConfigError("method must be a string");
    cfg->method = root["method"].get<std::string>();
  }
  const std::string base = method_base(cfg->method);
  if (base != "random" && base != "tpe" && base != "bayes" && base != "external")
    throw ConfigError("method: unknown base sampler \"" + base + "\"");

  std::string sampler_command;
  if (root.contains("sampler_command")) {
    if (!root["sampler_command"].is_string())
      throw ConfigError("sampler_command must be a string");
    sampler_command = root["sampler_command"].get<std::string>();
  }
  if (base == "external" && sampler_command.empty())
    throw ConfigError("sampler_command is required for an external base sampler");
  if (base != "external" && !sampler_command.empty())
    throw ConfigError("sampler_command is only valid with an external base sampler");

  json sampler = json::object();
  if (root.contains("sampler")) {
    if (!root["sampler"].is_object()) throw ConfigError("sampler must be an object");
    sampler = root["sampler"];
  }

  if (base == "random") {
    reject_unknown_keys(sampler, {}, "sampler (random)");
    cfg->sampler = RandomSamplerConfig{};
  } else if (base == "tpe") {
    reject_unknown_keys(sampler, {"gamma", "n_candidates", "n_startup"}, "sampler (tpe)");
    TpeSamplerConfig tpe;
    if (sampler.contains("gamma")) tpe.gamma = require_number(sampler, "gamma", "sampler");
    if (!(tpe.gamma > 0.0 && tpe.gamma < 1.0))
      throw ConfigError("sampler.gamma must be in (0, 1)");
    if (sampler.contains("n_candidates"))
      tpe.n_candidates = require_int(sampler, "n_candidates", "sampler");
    if (tpe.n_candidates < 1) throw ConfigError("sampler.n_candidates must be >= 1");
    if (sampler.contains("n_startup"))
      tpe.n_startup = require_int(sampler, "n_startup", "sampler");
    if (tpe.n_startup < 0) throw ConfigError("sampler.n_startup must be >= 0");
    cfg->sampler = tpe;
  } else if (base == "bayes") {
    reject_unknown_keys(sampler, {"noise", "n_candidates", "n_startup"}, "sampler (bayes)");
    BayesSamplerConfig bayes;
    if (sampler.contains("n_candidates"))
      bayes.n_candidates = require_int(sampler, "n_candidates", "sampler");
    if (bayes.n_candidates < 1) throw ConfigError("sampler.n_candidates must be >= 1");
    if (sampler.contains("n_startup"))
      bayes.n_startup = require_int(sampler, "n_startup", "sampler");
    if (bayes.n_startup < 0) throw ConfigError("sampler.n_startup must be >= 0");
    if (sampler.contains("noise")) bayes.noise = require_number(sampler, "noise", "sampler");
    if (!(bayes.noise > 0.0)) throw ConfigError("sampler.noise must be > 0");
    cfg->sampler = bayes;
  } else {
    reject_unknown_keys(sampler, {"timeout_s"}, "sampler (external)");
    ExternalSamplerConfig ext;
    ext.command = sampler_command;
    if (sampler.contains("timeout_s"))
      ext.timeout_s = require_number(sampler, "timeout_s", "sampler");
    if (!(ext.timeout_s > 0.0)) throw ConfigError("sampler.timeout_s must be > 0");
    cfg->sampler = ext;
  }
}

void parse_gam(const json& j, GamConfig* gam) {
  reject_unknown_keys(j, {"n_splines", "penalty", "degree", "penalty_order"}, "gam");
  if (j.contains("n_splines")) gam->n_splines = require_int(j, "n_splines", "gam");
  if (j.contains("penalty")) gam->penalty = require_number(j, "penalty", "gam");
  if (j.contains("degree")) gam->spline_degree = require_int(j, "degree", "gam");
  if (j.contains("penalty_order"))
    gam->penalty_order = require_int(j, "penalty_order", "gam");
  if (gam->spline_degree < 1 || gam->spline_degree > 7)
    throw ConfigError("gam.degree must be in [1, 7]");
  if (gam->n_splines <= gam->spline_degree)
    throw ConfigError("gam.n_splines must exceed gam.degree");
  if (gam->penalty < 0.0) throw ConfigError("gam.penalty must be >= 0");
  if (gam->penalty_order < 1 || gam->penalty_order > 3)
    throw ConfigError("gam.penalty_order must be in {1, 2, 3}");
}

void parse_nelder_mead(const json& j, NmConfig* nm) {
  reject_unknown_keys(j,
                      {"max_iter", "x_tol", "f_tol", "reflection", "expansion",
                       "contraction", "shrink", "initial_step"},
                      "nelder_mead");
  if (j.contains("max_iter")) nm->max_iter = require_int(j, "max_iter", "nelder_mead");
  if (j.contains("x_tol")) nm->x_tol = require_number(j, "x_tol", "nelder_mead");
  if (j.contains("f_tol")) nm->f_tol = require_number(j, "f_tol", "nelder_mead");
  if (j.contains("reflection"))
    nm->reflection = require_number(j, "reflection", "nelder_mead");
  if (j.contains("expansion"))
    nm->expansion = require_number(j, "expansion", "nelder_mead");
  if (j.contains("contraction"))
    nm->contraction = require_number(j, "contraction", "nelder_mead");
  if (j.contains("shrink")) nm->shrink = require_number(j, "shrink", "nelder_mead");
  if (j.contains("initial_step"))
    nm->initial_step = require_number(j, "initial_step", "nelder_mead");
  if (nm->max_iter < 0) throw ConfigError("nelder_mead.max_iter must be >= 0");
  if (!(nm->reflection > 0.0)) throw ConfigError("nelder_mead.reflection must be > 0");
  if (!(nm->expansion > 1.0)) throw ConfigError("nelder_mead.expansion must be > 1");
  if (!(nm->contraction > 0.0 && nm->contraction < 1.0))
    throw ConfigError("nelder_mead.contraction must be in (0, 1)");
  if (!(nm->shrink > 0.0 && nm->shrink < 1.0))
    throw ConfigError("nelder_mead.shrink must be in (0, 1)");
  if (!(nm->initial_step > 0.0))
    throw ConfigError("nelder_mead.initial_step must be > 0");
  if (nm->x_tol < 0.0 || nm->f_tol < 0.0)
    throw ConfigError("nelder_mead tolerances must be >= 0");
}

}  // namespace

bool method_uses_homopt(const std::string& method) {
  return method.rfind(kHomoptPrefix, 0) == 0;
}

std::string method_base(const std::string& method) {
  return method_uses_homopt(method) ? method.substr(std::strlen(kHomoptPrefix)) : method;
}

RunConfig parse_run_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "parse error at line " << line << ", column " << column << ": " << e.what();
    throw ConfigError(msg.str());
  }
  if (!root.is_object()) throw ConfigError("run config must be a JSON object");

  reject_unknown_keys(root,
                      {"objective", "space", "method", "sampler_command", "trials",
                       "max_time_s", "warmup", "jitter", "k", "top_count",
                       "homotopy_steps", "gam", "nelder_mead", "sampler", "seeds",
                       "output", "compare", "svg"},
                      "config");

  RunConfig cfg;
  if (!root.contains("objective")) throw ConfigError("objective is required");
  parse_objective(root["objective"], &cfg);

  if (root.contains("space")) cfg.space = space_from_json(root["space"]);
  if (!cfg.objective.command.empty() && !cfg.space)
    throw ConfigError("space is required for an external objective");

  parse_method(root, &cfg);

  if (!root.contains("trials")) throw ConfigError("trials is required");
  cfg.trials = require_int(root, "trials", "config");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");

  if (root.contains("max_time_s")) {
    cfg.max_time_s = require_number(root, "max_time_s", "config");
    if (!(*cfg.max_time_s > 0.0)) throw ConfigError("max_time_s must be > 0");
  }
  if (root.contains("warmup")) cfg.warmup = require_int(root, "warmup", "config");
  if (cfg.warmup < 0) throw ConfigError("warmup must be >= 0");
  if (cfg.trials < cfg.warmup) throw ConfigError("trials must be >= warmup");

  if (root.contains("jitter")) cfg.jitter = require_number(root, "jitter", "config");
  if (cfg.jitter < 0.0) throw ConfigError("jitter must be >= 0");
  if (root.contains("k")) cfg.k = require_number(root, "k", "config");
  if (!(cfg.k > 0.0 && cfg.k <= 1.0)) throw ConfigError("k must be in (0, 1]");
  if (root.contains("top_count")) cfg.top_count = require_int(root, "top_count", "config");
  if (cfg.top_count < 1) throw ConfigError("top_count must be >= 1");
  if (root.contains("homotopy_steps"))
    cfg.homotopy_steps = require_int(root, "homotopy_steps", "config");
  if (cfg.homotopy_steps < 1) throw ConfigError("homotopy_steps must be >= 1");

  if (root.contains("gam")) {
    if (!root["gam"].is_object()) throw ConfigError("gam must be an object");
    parse_gam(root["gam"], &cfg.gam);
  }
  if (root.contains("nelder_mead")) {
    if (!root["nelder_mead"].is_object())
      throw ConfigError("nelder_mead must be an object");
    parse_nelder_mead(root["nelder_mead"], &cfg.nelder_mead);
  }

  if (!root.contains("seeds")) throw ConfigError("seeds is required");
  if (!root["seeds"].is_array() || root["seeds"].empty())
    throw ConfigError("seeds must be a non-empty array");
  for (const auto& s : root["seeds"]) {
    if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
      throw ConfigError("seeds must be non-negative integers");
    cfg.seeds.push_back(s.get<std::uint64_t>());
  }

  if (root.contains("output")) {
    if (!root["output"].is_string() || root["output"].get<std::string>().empty())
      throw ConfigError("output must be a non-empty string");
    cfg.output = root["output"].get<std::string>();
  }
  if (root.contains("compare")) {
    if (!root["compare"].is_boolean()) throw ConfigError("compare must be a boolean");
    cfg.compare = root["compare"].get<bool>();
  }
  if (cfg.compare && !method_uses_homopt(cfg.method))
    throw ConfigError("compare requires a homopt+ method");
  if (root.contains("svg")) {
    if (!root["svg"].is_boolean()) throw ConfigError("svg must be a boolean");
    cfg.svg = root["svg"].get<bool>();
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

nlohmann::json run_config_to_json(const RunConfig& config) {
  json root;
  if (!config.objective.builtin.empty()) {
    root["objective"] = config.objective.builtin;
  } else {
    root["objective"] = {{"command", config.objective.command},
                         {"timeout_s", config.objective.timeout_s}};
  }
  if (config.space) root["space"] = space_to_json(*config.space);
  root["method"] = config.method;
  if (const auto* tpe = std::get_if<TpeSamplerConfig>(&config.sampler)) {
    root["sampler"] = {{"gamma", tpe->gamma},
                       {"n_candidates", tpe->n_candidates},
                       {"n_startup", tpe->n_startup}};
  } else if (const auto* bayes = std::get_if<BayesSamplerConfig>(&config.sampler)) {
    root["sampler"] = {{"noise", bayes->noise},
                       {"n_candidates", bayes->n_candidates},
                       {"n_startup", bayes->n_startup}};
  } else if (const auto* ext = std::get_if<ExternalSamplerConfig>(&config.sampler)) {
    root["sampler_command"] = ext->command;
    root["sampler"] = {{"timeout_s", ext->timeout_s}};
  }
  root["trials"] = config.trials;
  if (config.max_time_s) root["max_time_s"] = *config.max_time_s;
  root["warmup"] = config.warmup;
  root["jitter"] = config.jitter;
  root["k"] = config.k;
  root["top_count"] = config.top_count;
  root["homotopy_steps"] = config.homotopy_steps;
  root["gam"] = {{"n_splines", config.gam.n_splines},
                 {"penalty", config.gam.penalty},
                 {"degree", config.gam.spline_degree},
                 {"penalty_order", config.gam.penalty_order}};
  root["nelder_mead"] = {{"max_iter", config.nelder_mead.max_iter},
                         {"x_tol", config.nelder_mead.x_tol},
                         {"f_tol", config.nelder_mead.f_tol},
                         {"reflection", config.nelder_mead.reflection},
                         {"expansion", config.nelder_mead.expansion},
                         {"contraction", config.nelder_mead.contraction},
                         {"shrink", config.nelder_mead.shrink},
                         {"initial_step", config.nelder_mead.initial_step}};
  root["seeds"] = config.seeds;
  root["output"] = config.output;
  root["compare"] = config.compare;
  root["svg"] = config.svg;
  return root;
}

Objective make_objective(const RunConfig& config) {
  if (!config.objective.builtin.empty()) {
    Objective obj = builtin_objective(config.objective.builtin);
    if (config.space) obj.space = *config.space;
    return obj;
  }
  return external_objective(config.objective.command, *config.space,
                            config.objective.timeout_s);
}

DriverConfig make_driver_config(const RunConfig& config, bool augment,
                                std::uint64_t seed) {
  DriverConfig driver;
  driver.max_trials = config.trials;
  driver.max_time_s = config.max_time_s;
  driver.warmup = config.warmup;
  driver.distance_factor = config.jitter;
  driver.k = config.k;
  driver.top_count = config.top_count;
  driver.augment = augment;
  driver.homotopy.n_steps = config.homotopy_steps;
  driver.homotopy.nm = config.nelder_mead;
  driver.gam = config.gam;
  driver.sampler = config.sampler;
  driver.seed = seed;
  return driver;
}

}  // namespace homopt
