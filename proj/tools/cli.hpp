#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adic::cli {

// Exit codes: 0 decided, 2 some result Undecided, 1 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adic::cli
