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

#include "homopt/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "homopt/errors.hpp"

namespace homopt {

namespace {

// Ties round away from zero, matching std::llround.
std::int64_t round_index(double x) { return std::llround(x); }

std::int64_t clamp_index(std::int64_t i, std::int64_t lo, std::int64_t hi) {
  return std::max(lo, std::min(hi, i));
}

}  // namespace

SearchSpace::SearchSpace(std::vector<ParamSpec> params) : params_(std::move(params)) {
  std::set<std::string> names;
  bounds_.lo.reserve(params_.size());
  bounds_.hi.reserve(params_.size());
  for (const auto& p : params_) {
    if (p.name.empty()) throw DomainError("parameter name must be non-empty");
    if (!names.insert(p.name).second)
      throw DomainError("duplicate parameter name: " + p.name);

    if (const auto* c = std::get_if<ContinuousDomain>(&p.domain)) {
      if (!(c->lo < c->hi))
        throw DomainError("continuous parameter " + p.name + ": lo must be < hi");
      if (c->log_scale && !(c->lo > 0.0))
        throw DomainError("log-scaled parameter " + p.name + ": lo must be > 0");
      if (c->log_scale) {
        bounds_.lo.push_back(std::log10(c->lo));
        bounds_.hi.push_back(std::log10(c->hi));
      } else {
        bounds_.lo.push_back(c->lo);
        bounds_.hi.push_back(c->hi);
      }
    } else if (const auto* i = std::get_if<IntegerDomain>(&p.domain)) {
      if (i->lo > i->hi)
        throw DomainError("integer parameter " + p.name + ": lo must be <= hi");
      bounds_.lo.push_back(static_cast<double>(i->lo));
      bounds_.hi.push_back(static_cast<double>(i->hi));
    } else {
      const auto& cat = std::get<CategoricalDomain>(p.domain);
      if (cat.choices.empty())
        throw DomainError("categorical parameter " + p.name + ": choices must be non-empty");
      std::set<std::string> labels(cat.choices.begin(), cat.choices.end());
      if (labels.size() != cat.choices.size())
        throw DomainError("categorical parameter " + p.name + ": duplicate choice label");
      bounds_.lo.push_back(0.0);
      bounds_.hi.push_back(static_cast<double>(cat.choices.size() - 1));
    }
  }
}

void SearchSpace::check_dim(const ParamVector& x) const {
  if (x.size() != params_.size())
    throw DomainError("vector length " + std::to_string(x.size()) +
                      " does not match space dimension " + std::to_string(params_.size()));
}

ParamVector SearchSpace::encode(const ParamAssignment& assignment) const {
  for (const auto& [name, value] : assignment) {
    (void)value;
    const bool known = std::any_of(params_.begin(), params_.end(),
                                   [&](const ParamSpec& p) { return p.name == name; });
    if (!known) throw DomainError("unknown parameter name: " + name);
  }

  ParamVector x;
  x.reserve(params_.size());
  for (const auto& p : params_) {
    const auto it = assignment.find(p.name);
    if (it == assignment.end())
      throw DomainError("assignment is missing parameter: " + p.name);
    const ParamValue& v = it->second;

    if (const auto* c = std::get_if<ContinuousDomain>(&p.domain)) {
      double value = 0.0;
      if (const auto* d = std::get_if<double>(&v)) {
        value = *d;
      } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
        value = static_cast<double>(*i);
      } else {
        throw DomainError("parameter " + p.name + ": expected a real value");
      }
      if (!(value >= c->lo && value <= c->hi))
        throw DomainError("parameter " + p.name + ": value out of range");
      x.push_back(c->log_scale ? std::log10(value) : value);
    } else if (const auto* i = std::get_if<IntegerDomain>(&p.domain)) {
      const auto* iv = std::get_if<std::int64_t>(&v);
      if (iv == nullptr)
        throw DomainError("parameter " + p.name + ": expected an integer value");
      if (*iv < i->lo || *iv > i->hi)
        throw DomainError("parameter " + p.name + ": value out of range");
      x.push_back(static_cast<double>(*iv));
    } else {
      const auto& cat = std::get<CategoricalDomain>(p.domain);
      const auto* label = std::get_if<std::string>(&v);
      if (label == nullptr)
        throw DomainError("parameter " + p.name + ": expected a categorical label");
      const auto pos = std::find(cat.choices.begin(), cat.choices.end(), *label);
      if (pos == cat.choices.end())
        throw DomainError("parameter " + p.name + ": unknown label " + *label);
      x.push_back(static_cast<double>(pos - cat.choices.begin()));
    }
  }
  return x;
}

ParamAssignment SearchSpace::decode(const ParamVector& x) const {
  check_dim(x);
  ParamAssignment out;
  for (std::size_t j = 0; j < params_.size(); ++j) {
    const auto& p = params_[j];
    const double coord = x[j];

    if (const auto* c = std::get_if<ContinuousDomain>(&p.domain)) {
      if (c->log_scale) {
        const double t = std::clamp(coord, std::log10(c->lo), std::log10(c->hi));
        out[p.name] = std::clamp(std::pow(10.0, t), c->lo, c->hi);
      } else {
        out[p.name] = std::clamp(coord, c->lo, c->hi);
      }
    } else if (const auto* i = std::get_if<IntegerDomain>(&p.domain)) {
      out[p.name] = clamp_index(round_index(coord), i->lo, i->hi);
    } else {
      const auto& cat = std::get<CategoricalDomain>(p.domain);
      const auto idx = clamp_index(round_index(coord), 0,
                                   static_cast<std::int64_t>(cat.choices.size()) - 1);
      out[p.name] = cat.choices[static_cast<std::size_t>(idx)];
    }
  }
  return out;
}

ParamVector SearchSpace::clamp(ParamVector x) const {
  check_dim(x);
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = std::clamp(x[j], bounds_.lo[j], bounds_.hi[j]);
  return x;
}

ParamVector SearchSpace::sample_uniform(Rng& rng) const {
  ParamVector x;
  x.reserve(params_.size());
  for (std::size_t j = 0; j < params_.size(); ++j) {
    const auto& p = params_[j];
    if (std::holds_alternative<ContinuousDomain>(p.domain)) {
      x.push_back(uniform_real(rng, bounds_.lo[j], bounds_.hi[j]));
    } else {
      // integer / categorical: uniform over indices, cast to real
      const auto lo = static_cast<std::int64_t>(bounds_.lo[j]);
      const auto hi = static_cast<std::int64_t>(bounds_.hi[j]);
      x.push_back(static_cast<double>(uniform_int(rng, lo, hi)));
    }
  }
  return x;
}

}  // namespace homopt
