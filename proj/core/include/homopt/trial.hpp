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

#ifndef HOMOPT_TRIAL_HPP_
#define HOMOPT_TRIAL_HPP_

#include <string>
#include <vector>

#include "homopt/search_space.hpp"

namespace homopt {

/// Which scheduler branch produced a trial.
enum class TrialBranch { kWarmup, kInner, kPerturb, kHomotopy };

const char* branch_name(TrialBranch branch);

/// One evaluated configuration. Params are the raw encoded coordinates
/// (pre-rounding); losses are always finite -- failed evaluations are
/// recorded under a worst-case sentinel by the driver.
struct Trial {
  ParamVector params;
  double loss = 0.0;
  int index = 0;  // completion order, dense from 0
  TrialBranch branch = TrialBranch::kWarmup;
};

/// Append-only trial log ordered by completion. Indices are assigned on
/// append, so they are unique and dense by construction.
class TrialHistory {
 public:
  void append(ParamVector params, double loss, TrialBranch branch);

  const std::vector<Trial>& trials() const { return trials_; }
  std::size_t size() const { return trials_.size(); }
  bool empty() const { return trials_.empty(); }

  /// Lowest-loss trial, earliest index on ties. Throws Error when empty.
  const Trial& best() const;

  /// min loss over trials[0..t]; throws Error when t is out of range.
  double best_so_far(std::size_t t) const;

  std::vector<double> losses() const;

 private:
  std::vector<Trial> trials_;
  std::vector<double> running_min_;
  std::size_t best_index_ = 0;
};

}  // namespace homopt

#endif  // HOMOPT_TRIAL_HPP_
