#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace absprob {

/// Command-line entry point; `args` excludes the program name. Returns 0 when
/// the checked property holds (or the command succeeded), 1 when it fails,
/// and 2 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace absprob
