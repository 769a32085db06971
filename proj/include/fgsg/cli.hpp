#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgsg {

/// Exit codes: 0 success, 1 input or validation error, 2 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace fgsg
