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

#include "homopt/trial.hpp"

#include <algorithm>
#include <cmath>

#include "homopt/errors.hpp"

namespace homopt {

const char* branch_name(TrialBranch branch) {
  switch (branch) {
    case TrialBranch::kWarmup: return "warmup";
    case TrialBranch::kInner: return "inner";
    case TrialBranch::kPerturb: return "perturb";
    case TrialBranch::kHomotopy: return "homotopy";
  }
  return "?";
}

void TrialHistory::append(ParamVector params, double loss, TrialBranch branch) {
  if (!std::isfinite(loss)) throw Error("trial loss must be finite");
  Trial t;
  t.params = std::move(params);
  t.loss = loss;
  t.index = static_cast<int>(trials_.size());
  t.branch = branch;
  if (trials_.empty() || loss < trials_[best_index_].loss)
    best_index_ = trials_.size();
  running_min_.push_back(trials_.empty() ? loss : std::min(loss, running_min_.back()));
  trials_.push_back(std::move(t));
}

const Trial& TrialHistory::best() const {
  if (trials_.empty()) throw Error("trial history is empty");
  return trials_[best_index_];
}

double TrialHistory::best_so_far(std::size_t t) const {
  if (t >= running_min_.size()) throw Error("best_so_far: index out of range");
  return running_min_[t];
}

std::vector<double> TrialHistory::losses() const {
  std::vector<double> out;
  out.reserve(trials_.size());
  for (const auto& t : trials_) out.push_back(t.loss);
  return out;
}

}  // namespace homopt
