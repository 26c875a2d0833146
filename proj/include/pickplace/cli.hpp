#pragma once

// Command-line front end, callable in-process so tests can drive it.

#include <string>
#include <vector>

namespace pickplace {

// args excludes the program name. Returns the process exit code:
// 0 success, 1 no solution found, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args);

}  // namespace pickplace
