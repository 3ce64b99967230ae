// Copyright 2026 The nashqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "nashqubo/error.hpp"

namespace nashqubo {

struct ProcessResult {
  int exit_code = 0;
  std::string output;  // everything the child wrote to stdout
};

namespace detail {

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd_(o.release()) {}
  Fd& operator=(Fd&& o) noexcept {
    reset(o.release());
    return *this;
  }
  ~Fd() { reset(); }

  int get() const { return fd_; }
  int release() { return std::exchange(fd_, -1); }
  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_ = -1;
};

inline std::pair<Fd, Fd> make_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw ProcessError(std::string("pipe failed: ") + std::strerror(errno));
  return {Fd(fds[0]), Fd(fds[1])};
}

}  // namespace detail

/// Runs argv with `input` on its stdin and collects its stdout. stderr is
/// inherited. Throws ProcessError if the program cannot be started or is
/// killed by a signal.
inline ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input) {
  if (argv.empty()) throw ProcessError("empty command");
  auto [in_read, in_write] = detail::make_pipe();
  auto [out_read, out_write] = detail::make_pipe();
  auto [err_read, err_write] = detail::make_pipe();  // carries exec failures

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw ProcessError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_read.get(), STDIN_FILENO);
    ::dup2(out_write.get(), STDOUT_FILENO);
    ::execvp(args[0], args.data());
    int code = errno;
    [[maybe_unused]] auto n = ::write(err_write.get(), &code, sizeof code);
    ::_exit(127);
  }
  in_read.reset();
  out_write.reset();
  err_write.reset();

  std::thread writer([fd = std::move(in_write), &input]() mutable {
    ::signal(SIGPIPE, SIG_IGN);
    std::size_t done = 0;
    while (done < input.size()) {
      ssize_t n = ::write(fd.get(), input.data() + done, input.size() - done);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;  // child stopped reading; its exit status tells the story
      done += static_cast<std::size_t>(n);
    }
  });

  ProcessResult result;
  char buffer[65536];
  while (true) {
    ssize_t n = ::read(out_read.get(), buffer, sizeof buffer);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    result.output.append(buffer, static_cast<std::size_t>(n));
  }
  writer.join();

  int exec_errno = 0;
  bool exec_failed = ::read(err_read.get(), &exec_errno, sizeof exec_errno) == sizeof exec_errno;
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (exec_failed) throw ProcessError("cannot execute '" + argv[0] + "': " + std::strerror(exec_errno));
  if (WIFSIGNALED(status))
    throw ProcessError("'" + argv[0] + "' killed by signal " + std::to_string(WTERMSIG(status)));
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace nashqubo
