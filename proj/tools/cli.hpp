#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace randmult::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;

// args excludes the program name. Output goes to `out` unless --output is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randmult::cli
