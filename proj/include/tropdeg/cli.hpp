#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropdeg::cli {

/// Exit codes: 0 success, 2 a domain error, 3 malformed input.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 2;
inline constexpr int kInputError = 3;

/// Runs one command line. The graph comes from --graph or, failing that,
/// from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tropdeg::cli
