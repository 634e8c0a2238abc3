#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freelike::cli {

// Runs one command line (without the program name). Exit status: 0 success,
// 1 verification failure or exhausted budget, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freelike::cli
