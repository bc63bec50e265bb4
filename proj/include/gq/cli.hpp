#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gq::cli {

/// Exit codes: 0 success, 1 validation or domain failure, 2 numerical or internal failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInternal = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gq::cli
