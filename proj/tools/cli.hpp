#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace decaysum::cli {

/// Entry point behind the decaysum binary. argv excludes the program name.
/// Returns the process exit code: 0 success, 1 runtime/numeric failure,
/// 2 configuration error.
int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err);

}  // namespace decaysum::cli
