#pragma once

#include <string>
#include <vector>

namespace lorentz {

// runs the command line tool in-process; stdout goes to `out` so callers can
// verify byte-identical reports. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::string& out);

}  // namespace lorentz
