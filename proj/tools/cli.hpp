#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace qs::cli {

// Exit codes: 0 all equal or passing, 1 any mismatch or failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);
int run(int argc, const char* const* argv);

}  // namespace qs::cli
