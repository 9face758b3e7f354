#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vecopt::cli {

// Exit codes: 0 success (solve: converged), 1 non-convergence or failed
// checks, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vecopt::cli
