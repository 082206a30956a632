#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dyneval::cli {

/// Runs one subcommand. Results go to `out`; failures are reported on `err`
/// as a JSON object {"error": {...}}. Returns the process exit status:
/// 0 on success, 1 on evaluation errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dyneval::cli
