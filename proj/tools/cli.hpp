#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdg::cli {

// Exit codes: 0 all checks pass, 1 some check failed, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdg::cli
