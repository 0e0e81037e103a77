#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqbus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitPhysics = 3;

/// Entry point of the `cqbus` tool. args excludes the program name.
/// Documents go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cqbus::cli
