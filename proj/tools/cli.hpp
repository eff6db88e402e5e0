#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhr::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage or parse error.
/// `args` excludes the program name. Output is written only on success.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace qhr::cli
