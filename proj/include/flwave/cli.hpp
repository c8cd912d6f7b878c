#pragma once

#include <iosfwd>

namespace flwave {

/// Entry point of the flwave command line. Returns the process exit code:
/// 0 success, 1 verification failure, 2 configuration, 3 numeric, 4 I/O.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flwave
