#pragma once

#include <spdlog/logger.h>

namespace supercap {

/// Library logger. Writes to standard error so standard output stays free for
/// command results and the classifier wire protocol. Level comes from the
/// SUPERCAP_LOG environment variable (trace, debug, info, warn, error,
/// critical, off); default warn.
spdlog::logger& log();

}  // namespace supercap
