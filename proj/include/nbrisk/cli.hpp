#ifndef NBRISK_CLI_HPP_
#define NBRISK_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nbrisk {

/// Parses a grid expression:
///   "a,b,c"     explicit values
///   "a:b"       a, a + 1, ..., b
///   "a:b:s"     a, a + s, ... up to b
///   "a:b:logN"  N values geometrically spaced from a to b inclusive
/// Throws ParameterError on malformed input.
std::vector<double> parse_grid(std::string_view text);

/// parse_grid rounded to positive integers, duplicates removed (first kept).
std::vector<std::size_t> parse_size_grid(std::string_view text);

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit status: 0 success, 1 runtime/I-O failure, 2 usage error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

std::string_view version_string();

}  // namespace nbrisk

#endif  // NBRISK_CLI_HPP_
