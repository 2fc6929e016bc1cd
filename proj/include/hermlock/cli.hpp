#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hermlock::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hermlock::cli
