#pragma once

#include <ostream>

#include "gausslab_cli/config.hpp"
#include "gausslab_cli/report.hpp"

namespace gausslab::cli {

enum ExitCode : int { kOk = 0, kInvalidConfig = 1, kGuard = 2, kInternal = 3 };

struct RunResult {
  Report report;
  bool violation = false;  // a proved inequality failed (large sieve ratio > 1)
};

// Computes the report for one command.  Diagnostics go to log.
RunResult build_report(const RunConfig& cfg, std::ostream& log);

// build_report + serialization + audit trail; maps library errors to exit codes.
int run(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& log);

}  // namespace gausslab::cli
