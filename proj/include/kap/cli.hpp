#pragma once

#include <string>
#include <vector>

namespace kap::cli {

// Dispatch a command line (without argv[0]). Returns the process exit code:
// 0 success/pass, 1 verdict fail, 2 usage error, 3 computation error.
int run(const std::vector<std::string>& args);

} // namespace kap::cli
