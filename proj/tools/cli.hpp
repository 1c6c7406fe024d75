#pragma once

namespace supercap::cli {

// Exit codes are a stable contract for scripts.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitClassifier = 3;

/// Entry point of the `supercap` command.
int run(int argc, char** argv);

}  // namespace supercap::cli
