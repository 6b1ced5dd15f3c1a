#pragma once

#include <string>
#include <vector>

namespace esos::cli {

// Entry point shared by the binary and the tests. Returns the process exit
// status: 0 on success, nonzero with a diagnostic on stderr otherwise.
int run(const std::vector<std::string>& args);

}  // namespace esos::cli
