#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace polyring {

inline constexpr const char* kToolName = "polyring";
inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 certificate violation, 2 numerically singular,
// 3 invalid input, 4 collision abort.
int exit_code_for(const std::exception& e);

// Runs one subcommand (solve, scan, certify, simulate, spectrum) against the
// given streams and returns the process exit code. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyring
