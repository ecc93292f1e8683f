#pragma once

// Command-line front end. `run` parses argv, executes one subcommand and writes
// a JSON (or CSV) document. Exit codes: 0 ok, 1 a checked invariant failed,
// 2 bad input.

#include <iosfwd>
#include <string>
#include <vector>

namespace liesur::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitBadInput = 2;

/// Relative --output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "LIESUR_OUTPUT_DIR";

std::string version();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace liesur::cli
