#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace berger {

/// Runs one command line (without the program name). Exit codes: 0 pass,
/// 1 check failure or refusal, 2 input, parse or usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berger
