#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tglp {

// Runs one command given its arguments without the program name.
// Exit codes: 0 success, 1 negative verdict (rejected proof, invalid frame, path violations),
// 2 usage, parse, range or file errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tglp
