#pragma once
// Command-line driver. Exit codes: 0 pass, 1 condition failure, 2 usage or
// I/O error.

#include <iosfwd>
#include <string>
#include <vector>

namespace xrt::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xrt::cli
