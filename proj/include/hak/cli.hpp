#pragma once

#include <string>
#include <vector>

namespace hak {

/// Exit codes: 0 = all hard assertions pass, 2 = assertion failure,
/// 3 = configuration error.
int run_cli(const std::vector<std::string>& args);

}  // namespace hak
