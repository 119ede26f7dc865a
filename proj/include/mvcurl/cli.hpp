#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mvcurl {

// Runs one CLI invocation; `args` excludes the program name. Results go to
// `out`, diagnostics to `err`. Exit codes: 0 success or predicate true,
// 1 predicate false or empty solution space, 2 parse/validation error,
// 3 mathematical error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvcurl
