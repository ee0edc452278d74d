#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdcurv::cli {

/// Exit codes: 0 success, 1 input or usage error, 2 a checked identity or
/// verdict failed.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kVerdictFailure = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdcurv::cli
