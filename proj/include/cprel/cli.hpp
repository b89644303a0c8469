#pragma once

// Batch command-line front end. Exit codes: 0 on success/compatible,
// 1 on incompatible or infeasible inputs (certificate JSON on stdout),
// 2 on malformed input (message on stderr).

#include <ostream>
#include <string>
#include <vector>

namespace cprel::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cprel::cli
