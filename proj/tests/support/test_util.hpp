#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "supercap/image.hpp"

namespace supercap::testing {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "supercap-test-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline Image random_image(std::mt19937& rng, int w, int h) {
  Image img(w, h);
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& b : img.bytes()) b = static_cast<std::uint8_t>(byte(rng));
  return img;
}

inline Image checkerboard(int w, int h, int square, Rgb a, Rgb b) {
  Image img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.set(x, y, ((x / square + y / square) % 2 == 0) ? a : b);
  return img;
}

/// FNV-1a over the pixel bytes.
inline std::uint64_t pixel_hash(const Image& img) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint8_t b : img.bytes()) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command and captures its stdout.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace supercap::testing
