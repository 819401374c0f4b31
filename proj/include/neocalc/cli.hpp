#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace neocalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitParse = 3;

/// Runs one command line (without the program name). The JSON report goes to
/// `out` unless --out names a file; diagnostics for failures go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace neocalc::cli
