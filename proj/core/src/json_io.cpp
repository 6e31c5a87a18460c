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

#include "homopt/json_io.hpp"

#include <set>

#include "homopt/errors.hpp"

namespace homopt {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end())
      throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

}  // namespace

json space_to_json(const SearchSpace& space) {
  json arr = json::array();
  for (const auto& p : space.params()) {
    json item;
    item["name"] = p.name;
    if (const auto* c = std::get_if<ContinuousDomain>(&p.domain)) {
      item["kind"] = "continuous";
      item["lo"] = c->lo;
      item["hi"] = c->hi;
      if (c->log_scale) item["log"] = true;
    } else if (const auto* i = std::get_if<IntegerDomain>(&p.domain)) {
      item["kind"] = "integer";
      item["lo"] = i->lo;
      item["hi"] = i->hi;
    } else {
      item["kind"] = "categorical";
      item["choices"] = std::get<CategoricalDomain>(p.domain).choices;
    }
    arr.push_back(std::move(item));
  }
  return arr;
}

SearchSpace space_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("space: expected an array of parameter objects");
  std::vector<ParamSpec> params;
  params.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_object()) throw ConfigError("space: each parameter must be an object");
    if (!item.contains("name") || !item["name"].is_string())
      throw ConfigError("space: parameter \"name\" must be a string");
    if (!item.contains("kind") || !item["kind"].is_string())
      throw ConfigError("space: parameter \"kind\" must be a string");
    const std::string name = item["name"].get<std::string>();
    const std::string kind = item["kind"].get<std::string>();

    ParamSpec spec;
    spec.name = name;
    if (kind == "continuous") {
      require_keys(item, {"name", "kind", "lo", "hi", "log"}, "space parameter " + name);
      if (!item.contains("lo") || !item.contains("hi") || !item["lo"].is_number() ||
          !item["hi"].is_number())
        throw ConfigError("space parameter " + name + ": \"lo\" and \"hi\" must be numbers");
      ContinuousDomain c;
      c.lo = item["lo"].get<double>();
      c.hi = item["hi"].get<double>();
      if (item.contains("log")) {
        if (!item["log"].is_boolean())
          throw ConfigError("space parameter " + name + ": \"log\" must be a boolean");
        c.log_scale = item["log"].get<bool>();
      }
      spec.domain = c;
    } else if (kind == "integer") {
      require_keys(item, {"name", "kind", "lo", "hi"}, "space parameter " + name);
      if (!item.contains("lo") || !item.contains("hi") ||
          !item["lo"].is_number_integer() || !item["hi"].is_number_integer())
        throw ConfigError("space parameter " + name + ": \"lo\" and \"hi\" must be integers");
      spec.domain = IntegerDomain{item["lo"].get<std::int64_t>(), item["hi"].get<std::int64_t>()};
    } else if (kind == "categorical") {
      require_keys(item, {"name", "kind", "choices"}, "space parameter " + name);
      if (!item.contains("choices") || !item["choices"].is_array())
        throw ConfigError("space parameter " + name + ": \"choices\" must be an array");
      CategoricalDomain cat;
      for (const auto& c : item["choices"]) {
        if (!c.is_string())
          throw ConfigError("space parameter " + name + ": choices must be strings");
        cat.choices.push_back(c.get<std::string>());
      }
      spec.domain = cat;
    } else {
      throw ConfigError("space parameter " + name + ": unknown kind \"" + kind + "\"");
    }
    params.push_back(std::move(spec));
  }
  try {
    return SearchSpace(std::move(params));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("space: ") + e.what());
  }
}

json assignment_to_json(const ParamAssignment& assignment) {
  json obj = json::object();
  for (const auto& [name, value] : assignment) {
    if (const auto* d = std::get_if<double>(&value))
      obj[name] = *d;
    else if (const auto* i = std::get_if<std::int64_t>(&value))
      obj[name] = *i;
    else
      obj[name] = std::get<std::string>(value);
  }
  return obj;
}

ParamAssignment assignment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("params: expected an object");
  ParamAssignment out;
  for (const auto& [name, value] : j.items()) {
    if (value.is_number_integer())
      out[name] = value.get<std::int64_t>();
    else if (value.is_number())
      out[name] = value.get<double>();
    else if (value.is_string())
      out[name] = value.get<std::string>();
    else
      throw ConfigError("params: value of \"" + name + "\" must be a number or string");
  }
  return out;
}

json gam_to_json(const GamSurrogate& model) {
  json out;
  out["intercept"] = model.intercept();
  out["n_splines"] = model.config().n_splines;
  out["spline_degree"] = model.config().spline_degree;
  out["penalty"] = model.config().penalty;
  out["penalty_order"] = model.config().penalty_order;
  json dims = json::array();
  for (const auto& s : model.smooths()) {
    json d;
    d["active"] = s.active;
    d["train_lo"] = s.train_lo;
    d["train_hi"] = s.train_hi;
    d["knots"] = s.knots;
    d["coefficients"] = s.coefficients;
    d["basis_means"] = s.basis_means;
    dims.push_back(std::move(d));
  }
  out["smooths"] = std::move(dims);
  return out;
}

}  // namespace homopt
