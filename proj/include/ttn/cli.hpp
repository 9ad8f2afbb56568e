#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ttn::cli {

/// Runs one `ttn` invocation. `args[0]` is the program name.
/// Returns 0 on success, 1 on input/model errors, 2 on an unknown subcommand.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ttn::cli
