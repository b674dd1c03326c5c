#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace transax {

// Full command-line driver; streams injected for testing. Exit codes:
// 0 success/verified, 1 refuted/not found, 2 usage or input error,
// 3 resource cap exceeded.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace transax
