#pragma once

#include <string>
#include <vector>

namespace pedmdp {

// Full command-line entry point. Exit codes: 0 success, 2 input error,
// 3 capacity error, 4 internal invariant violation.
int run_cli(const std::vector<std::string>& args);

} // namespace pedmdp
