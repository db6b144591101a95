#pragma once

#include <ostream>

namespace vfk::service {

// Entry point of the `vfk` tool. Returns 0 on success (a reject verdict is a
// success), 1 on a domain error and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vfk::service
