#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ratiosec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;

enum class Format { csv, markdown, jsonl };

/// Parses "1-20", "7,9,12" or mixtures such as "1-6,12". Throws
/// std::invalid_argument on malformed text or ids outside the suite.
std::vector<int> parse_function_ids(std::string_view text);

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ratiosec::cli
