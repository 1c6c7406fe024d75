#include "supercap/subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <mutex>
#include <string>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "supercap/errors.hpp"
#include "supercap/image_io.hpp"
#include "supercap/log.hpp"
#include "supercap/protocol.hpp"

extern char** environ;

namespace supercap {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxResponseBytes = 32;

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

// A dead child must surface as EPIPE from write(), not kill this process.
void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() <= 0 ? 0 : static_cast<int>(left.count());
}

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

std::string describe_status(int status) {
  if (WIFEXITED(status)) return "exited with status " + std::to_string(WEXITSTATUS(status));
  if (WIFSIGNALED(status)) return "killed by signal " + std::to_string(WTERMSIG(status));
  return "stopped";
}

}  // namespace

SubprocessClassifier::SubprocessClassifier(std::string command, std::size_t vocab_size,
                                           Options options)
    : command_(std::move(command)), vocab_size_(vocab_size), options_(options) {
  if (command_.empty()) throw InvalidArgument("classifier command is empty");
  if (vocab_size_ == 0) throw InvalidArgument("vocabulary size must be positive");
  ignore_sigpipe();

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw TransportError(errno_text("pipe"));
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw TransportError(errno_text("pipe"));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  std::string sh = "/bin/sh";
  std::string dash_c = "-c";
  char* argv[] = {sh.data(), dash_c.data(), command_.data(), nullptr};
  const int rc = ::posix_spawn(&pid_, "/bin/sh", &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    pid_ = -1;
    throw TransportError("cannot start classifier '" + command_ + "': " + std::strerror(rc));
  }
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);
  ::fcntl(from_child_, F_SETFL, ::fcntl(from_child_, F_GETFL) | O_NONBLOCK);
  log().debug("started classifier pid {}: {}", pid_, command_);
}

SubprocessClassifier::~SubprocessClassifier() { shutdown(); }

ClassIndex SubprocessClassifier::predict(const Canvas& canvas) {
  if (broken_ || to_child_ < 0) {
    throw TransportError("classifier process is no longer usable");
  }
  try {
    const auto deadline = Clock::now() + options_.timeout;
    write_all(wire::encode_frame(encode_png(canvas)), deadline);
    const ClassIndex index = wire::parse_response(read_line(deadline));
    if (index >= vocab_size_) {
      throw IndexOutOfRange("classifier replied class " + std::to_string(index) +
                            ", vocabulary has " + std::to_string(vocab_size_));
    }
    ++round_trips_;
    return index;
  } catch (...) {
    broken_ = true;
    throw;
  }
}

void SubprocessClassifier::write_all(const std::vector<std::uint8_t>& bytes,
                                     Clock::time_point deadline) {
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::write(to_child_, bytes.data() + done, bytes.size() - done);
    if (n > 0) {
      done += static_cast<std::size_t>(n);
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK) {
      throw TransportError(errno == EPIPE ? std::string("classifier process closed its input")
                                          : errno_text("write to classifier"));
    }
    pollfd p{to_child_, POLLOUT, 0};
    const int ready = ::poll(&p, 1, remaining_ms(deadline));
    if (ready < 0 && errno != EINTR) throw TransportError(errno_text("poll"));
    if (ready == 0) {
      throw TimeoutError("classifier did not accept the request within " +
                         std::to_string(options_.timeout.count()) + " ms");
    }
  }
}

std::string SubprocessClassifier::read_line(Clock::time_point deadline) {
  std::string line;
  char buf[64];
  while (true) {
    const ssize_t n = ::read(from_child_, buf, sizeof buf);
    if (n > 0) {
      line.append(buf, static_cast<std::size_t>(n));
      const std::size_t nl = line.find('\n');
      if (nl != std::string::npos) {
        if (nl + 1 != line.size()) throw ProtocolError("classifier sent bytes after the response line");
        line.pop_back();
        return line;
      }
      if (line.size() > kMaxResponseBytes) throw ProtocolError("classifier response line too long");
      continue;
    }
    if (n == 0) {
      std::string why = "classifier process closed its output";
      int status = 0;
      for (int i = 0; i < 20 && pid_ > 0; ++i) {
        if (::waitpid(pid_, &status, WNOHANG) == pid_) {
          why += " (" + describe_status(status) + ")";
          pid_ = -1;
          break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      throw TransportError(why);
    }
    if (errno == EINTR) continue;
    if (errno != EAGAIN && errno != EWOULDBLOCK) throw TransportError(errno_text("read from classifier"));
    pollfd p{from_child_, POLLIN, 0};
    const int ready = ::poll(&p, 1, remaining_ms(deadline));
    if (ready < 0 && errno != EINTR) throw TransportError(errno_text("poll"));
    if (ready == 0) {
      throw TimeoutError("classifier did not answer within " +
                         std::to_string(options_.timeout.count()) + " ms");
    }
  }
}

int SubprocessClassifier::shutdown() {
  close_fd(to_child_);
  int result = 0;
  if (pid_ > 0) {
    int status = 0;
    bool reaped = false;
    // Closing stdin asks the child to finish; give it a moment before killing.
    for (int i = 0; i < 200; ++i) {
      const pid_t r = ::waitpid(pid_, &status, WNOHANG);
      if (r == pid_ || (r < 0 && errno != EINTR)) {
        reaped = r == pid_;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    if (reaped) {
      result = status;
    } else {
      ::kill(pid_, SIGKILL);
      while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
      }
      result = -1;
    }
    pid_ = -1;
  }
  close_fd(from_child_);
  return result;
}

}  // namespace supercap
