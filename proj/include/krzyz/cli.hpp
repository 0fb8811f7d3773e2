// SPDX-License-Identifier: Apache-2.0
#pragma once

// The `krzyz` command line: subcommands ct, fejer, extremal and bound.
//
// Exit codes: 0 success, 1 numerical failure, 2 malformed input or flags,
// 3 the input is outside the coefficient body (ct) or not nonnegative (fejer).

#include <iosfwd>
#include <string>
#include <vector>

namespace krzyz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitRejected = 3;

/// Runs the CLI; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krzyz::cli
