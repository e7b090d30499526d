#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cascom {

/// Entry point of the `cascom` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on validation or semantic failure, 2 on usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cascom
