#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fqm::cli {

/// Exit codes: 0 pass, 1 a verification failed, 2 usage or parameter error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqm::cli
