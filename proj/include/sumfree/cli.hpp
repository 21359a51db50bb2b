// cli.hpp
//
// Entry point of the sumfree command-line tool. Reports go to `out`, logs and
// usage errors to `err`. Exit status: 0 success, 1 mathematical mismatches,
// 2 usage error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumfree {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumfree
