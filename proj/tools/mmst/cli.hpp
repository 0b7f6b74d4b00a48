#pragma once

#include <iosfwd>

namespace mmst {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kUsageOrIo = 2 };

/// Entry point behind main(); streams are injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mmst
