#pragma once

#include <string>
#include <vector>

namespace cocycle_lab::cli {

/// Exit 0 success or true verdict, 3 clean false verdict, 1 input error, 2 numerical failure.
struct CommandResult {
    int exit_code = 0;
    std::string payload;  ///< JSON, for stdout
    std::string log;      ///< human-readable, for stderr
};

/// `args` excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace cocycle_lab::cli
