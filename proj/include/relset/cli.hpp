#pragma once

#include <iosfwd>

namespace relset {

// Exit codes: 0 success, 1 input or output failure, 2 invalid configuration.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relset
