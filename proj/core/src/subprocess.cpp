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

#include "homopt/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "homopt/errors.hpp"

namespace homopt {

namespace {

using Clock = std::chrono::steady_clock;

void set_nonblocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

// The child runs in its own process group so shell wrappers and their
// grandchildren die together.
void kill_group(pid_t pid) {
  if (kill(-pid, SIGKILL) != 0) kill(pid, SIGKILL);
}

int wait_bounded(pid_t pid, Clock::time_point deadline, bool has_deadline,
                 bool* killed) {
  int status = 0;
  for (;;) {
    const pid_t r = waitpid(pid, &status, has_deadline ? WNOHANG : 0);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) return -1;
    if (r == 0) {
      if (Clock::now() >= deadline) {
        kill_group(pid);
        *killed = true;
        waitpid(pid, &status, 0);
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

}  // namespace

ProcessResult run_process(const std::string& command, const std::string& input,
                          double timeout_s) {
  static const bool sigpipe_ignored = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw Error("subprocess: pipe() failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw Error("subprocess: pipe() failed");
  }

  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw Error("subprocess: fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  int write_fd = in_pipe[1];
  int read_fd = out_pipe[0];
  set_nonblocking(write_fd);
  set_nonblocking(read_fd);

  const bool has_deadline = timeout_s > 0.0;
  const auto deadline =
      Clock::now() + std::chrono::microseconds(static_cast<long long>(timeout_s * 1e6));

  ProcessResult result;
  std::size_t written = 0;
  bool eof = false;
  char buffer[4096];

  while (!eof || write_fd >= 0) {
    struct pollfd fds[2];
    nfds_t n_fds = 0;
    int read_slot = -1;
    int write_slot = -1;
    if (!eof) {
      read_slot = static_cast<int>(n_fds);
      fds[n_fds++] = {read_fd, POLLIN, 0};
    }
    if (write_fd >= 0) {
      write_slot = static_cast<int>(n_fds);
      fds[n_fds++] = {write_fd, POLLOUT, 0};
    }

    int poll_ms = -1;
    if (has_deadline) {
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
      poll_ms = static_cast<int>(std::max<long long>(0, remaining.count()));
    }
    const int rc = poll(fds, n_fds, poll_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0 && has_deadline && Clock::now() >= deadline) {
      result.timed_out = true;
      break;
    }

    if (write_slot >= 0 && (fds[write_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (written < input.size()) {
        const ssize_t w =
            write(write_fd, input.data() + written, input.size() - written);
        if (w > 0) {
          written += static_cast<std::size_t>(w);
        } else if (w < 0 && errno != EAGAIN && errno != EINTR) {
          // child closed stdin early; stop feeding it
          close(write_fd);
          write_fd = -1;
        }
      }
      if (write_fd >= 0 && written >= input.size()) {
        close(write_fd);
        write_fd = -1;
      }
    }

    if (read_slot >= 0 && (fds[read_slot].revents & (POLLIN | POLLERR | POLLHUP))) {
      const ssize_t r = read(read_fd, buffer, sizeof(buffer));
      if (r > 0) {
        result.output.append(buffer, static_cast<std::size_t>(r));
      } else if (r == 0) {
        eof = true;
      } else if (errno != EAGAIN && errno != EINTR) {
        eof = true;
      }
    }
  }

  if (write_fd >= 0) close(write_fd);
  close(read_fd);

  bool killed = result.timed_out;
  if (result.timed_out) {
    kill_group(pid);
    int status = 0;
    waitpid(pid, &status, 0);
    result.exit_code = -1;
  } else {
    result.exit_code = wait_bounded(pid, deadline, has_deadline, &killed);
    if (killed) result.timed_out = true;
  }
  return result;
}

}  // namespace homopt
