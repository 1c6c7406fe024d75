#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <sys/types.h>
#include <vector>

#include "supercap/classifier.hpp"

namespace supercap {

/// Runs an external classifier via `/bin/sh -c <command>` and talks to it
/// over the wire protocol on its stdin/stdout. The child's stderr is
/// inherited. One request in flight at a time; the handle is not thread safe.
class SubprocessClassifier final : public ClassifierPort {
 public:
  struct Options {
    std::chrono::milliseconds timeout{30'000};
  };

  /// Throws TransportError if the process cannot be started.
  SubprocessClassifier(std::string command, std::size_t vocab_size, Options options);
  SubprocessClassifier(std::string command, std::size_t vocab_size)
      : SubprocessClassifier(std::move(command), vocab_size, Options{}) {}
  ~SubprocessClassifier() override;

  SubprocessClassifier(const SubprocessClassifier&) = delete;
  SubprocessClassifier& operator=(const SubprocessClassifier&) = delete;

  /// One request/response round trip. Throws TransportError, ProtocolError,
  /// TimeoutError, or IndexOutOfRange.
  ClassIndex predict(const Canvas& canvas) override;

  /// Completed round trips so far.
  std::size_t round_trips() const noexcept { return round_trips_; }

  /// Closes the request stream and reaps the child. Returns its exit status
  /// as reported by waitpid, or -1 if it had to be killed.
  int shutdown();

 private:
  void write_all(const std::vector<std::uint8_t>& bytes,
                 std::chrono::steady_clock::time_point deadline);
  std::string read_line(std::chrono::steady_clock::time_point deadline);

  std::string command_;
  std::size_t vocab_size_;
  Options options_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::size_t round_trips_ = 0;
  bool broken_ = false;
};

}  // namespace supercap
