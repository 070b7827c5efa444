#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpg::cli {

// Full command-line driver.  Reports go to `out` (stable bytes for identical
// inputs), logs and errors to `err`.  Returns the process exit code:
// 0 success, 1 failed gallery assertion, 2 usage, 3 domain/validation,
// 4 resource guard or internal fault.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpg::cli
