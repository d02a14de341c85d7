#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diophlab::cli {

// One invocation; `args` excludes the program name. JSON goes to `out`,
// diagnostics to `err`; the return value is the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diophlab::cli
