#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poscert::cli {

enum ExitCode { Ok = 0, Failed = 1, BadInput = 2, Resource = 3 };

/// Runs `poscert <args...>` writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poscert::cli
