#pragma once

#include <string>
#include <vector>

namespace pathmerge {

/// Entry point of the `pathmerge` tool. Returns the process exit code:
/// 0 success, 1 bad arguments or inputs, 2 planner failure.
int run_cli(int argc, const char* const* argv);
/// Same, with the program name omitted.
int run_cli(const std::vector<std::string>& args);

}  // namespace pathmerge
