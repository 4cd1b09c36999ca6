#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sheafdp {

// Command dispatch for the sheafdp tool. Exit codes for `decide`: 0 when
// satisfiable, 1 when not, 2 on any error, 3 when --oracle detects a
// disagreement. Other commands return 0 on success and 2 on error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sheafdp
