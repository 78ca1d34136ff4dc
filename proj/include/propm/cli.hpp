#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace propm::cli {

enum ExitCode : int {
    kOk = 0,
    kClaimFails = 1,
    kInputError = 2,
    kBudgetExceeded = 3,
};

/// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace propm::cli
