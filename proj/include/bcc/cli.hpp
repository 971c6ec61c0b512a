#pragma once

#include <iosfwd>

namespace bcc {

// Full command-line front end. Returns the process exit code: 0 on success,
// 1 on a verification violation, 2 on file/config/parameter errors.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bcc
