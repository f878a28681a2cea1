#pragma once

#include <iosfwd>

namespace octoverify::cli {

/// Exit codes: 0 every verdict passed (or nothing to adjudicate), 1 some
/// check failed, 2 usage or spec error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace octoverify::cli
