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

#include <chrono>
#include <string>

#include "homopt/subprocess.hpp"

using namespace homopt;

TEST_CASE("stdin is piped through to stdout") {
  const ProcessResult r = run_process("cat", "hello world\n", 20.0);
  CHECK(r.exit_code == 0);
  CHECK_FALSE(r.timed_out);
  CHECK(r.output == "hello world\n");
}

TEST_CASE("large payloads cross the pipe without deadlock") {
  std::string payload;
  for (int i = 0; i < 20000; ++i) payload += "0123456789abcdef\n";  // ~340 KiB
  const ProcessResult r = run_process("cat", payload, 30.0);
  CHECK(r.exit_code == 0);
  CHECK(r.output == payload);
}

TEST_CASE("exit codes come back verbatim") {
  const ProcessResult r = run_process("exit 3", "", 20.0);
  CHECK(r.exit_code == 3);
  CHECK_FALSE(r.timed_out);
}

TEST_CASE("a child ignoring stdin still runs to completion") {
  const ProcessResult r = run_process("echo done", "this input is never read\n", 20.0);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "done\n");
}

TEST_CASE("the deadline kills a stalled child") {
  const auto start = std::chrono::steady_clock::now();
  const ProcessResult r = run_process("sleep 30", "", 0.3);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.timed_out);
  CHECK(elapsed < 5.0);
}

TEST_CASE("a missing command reports the shell's 127") {
  const ProcessResult r = run_process("/definitely/not/a/command", "", 20.0);
  CHECK(r.exit_code == 127);
}
