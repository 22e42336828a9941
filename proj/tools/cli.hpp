#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsp::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 on validation errors, 2 on numerical failures.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsp::cli
