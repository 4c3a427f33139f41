#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fitts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;       // malformed input or config
inline constexpr int kExitIo = 3;          // read/write failure
inline constexpr int kExitIncomplete = 4;  // required conditions missing

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fitts::cli
