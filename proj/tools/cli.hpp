#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rana::cli {

// Exit codes: 0 the property holds or the conversion succeeded, 1 it fails
// (witness on stdout), 2 usage, parse, or runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rana::cli
