#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpa {

/// Runs one subcommand; args exclude the program name.
/// Exit status: 0 success, 1 domain error, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpa
