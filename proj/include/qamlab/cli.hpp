#pragma once

#include <iosfwd>

#include "qamlab/config.hpp"

namespace qamlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitError = 2;

// Each command prints a human-readable report to `out`, diagnostics to `err`, and returns
// the process exit code. Exit codes depend only on computed verdicts.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_search(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qamlab::cli
