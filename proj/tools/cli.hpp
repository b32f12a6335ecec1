#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperarr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the hyperarr command line. JSON results go to `out` (or --output),
/// diagnostics and trace events to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperarr::cli
