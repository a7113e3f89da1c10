#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptd::cli {

/// Exit codes of the ptd command.
enum ExitCode : int {
    kSuccess = 0,
    kValidationError = 1,
    kPropertyFailure = 2,
};

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptd::cli
