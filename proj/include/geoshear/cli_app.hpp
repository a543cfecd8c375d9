#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoshear {

// Exit codes:
//   0 all checks certified/passed      1 a bound was violated / witnessed
//   2 parse or validation error        3 numeric failure
//   4 some check inconclusive          5 I/O failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitInconclusive = 4;
inline constexpr int kExitIo = 5;

inline constexpr const char* kToolVersion = "0.1.0";

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace geoshear
