#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qb {

// Exit codes: 0 pass, 1 mathematical mismatch, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qb
