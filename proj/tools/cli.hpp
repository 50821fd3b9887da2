#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbd::cli {

/// Exit statuses. Verdicts never change the status; they live in the report.
enum ExitStatus : int { kOk = 0, kInputError = 1, kSizeLimit = 2 };

/// Runs the `cbd` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbd::cli
