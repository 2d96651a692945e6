#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dilutron {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolation = 2;

/// Entry point of the `dilutron` tool. `args` excludes the program name.
/// Machine output goes to --out (written atomically) or to `out`; the human
/// summary goes to `out` when --out is given and to `err` otherwise.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace dilutron
