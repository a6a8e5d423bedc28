#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ivt::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;         // bad flags, parse errors, malformed input
inline constexpr int kPreconditionFailed = 3;  // f(a) < 0 < f(b) does not hold
inline constexpr int kInvariantViolated = 4;   // verify found a Violation

// Entry point for `ivt <run|compare|verify|plot> ...`. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ivt::cli
