#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fop {

// Batch front end. Exit codes: 0 success, 1 a mathematical check failed,
// 2 usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fop
