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

#ifndef HOMOPT_SUBPROCESS_HPP_
#define HOMOPT_SUBPROCESS_HPP_

#include <string>

namespace homopt {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;  // captured stdout
};

/// Runs `command` through /bin/sh -c, feeding `input` on stdin and capturing
/// stdout. When timeout_s > 0 the child is killed once the deadline passes
/// and timed_out is set. Throws Error only on spawn failure; protocol-level
/// problems are the caller's to interpret.
ProcessResult run_process(const std::string& command, const std::string& input,
                          double timeout_s);

}  // namespace homopt

#endif  // HOMOPT_SUBPROCESS_HPP_
