#pragma once

#include <string>
#include <vector>

namespace tunnelkit::cli {

// Exit codes: 0 ok, 2 configuration error, 3 solver error.
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

int run(int argc, const char* const* argv);
// args excludes the program name
int run(const std::vector<std::string>& args);

}  // namespace tunnelkit::cli
