#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace tolspace::cli {

/// Runs one invocation.  `args` excludes the program name.
/// Exit status: 0 success, 1 invalid input or refused request, 2 invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reports a caught library error on `err` and returns its exit status.
/// Rethrows anything that is not a library, JSON or filesystem error.
int exit_status(std::exception_ptr e, std::ostream& err);

} // namespace tolspace::cli
