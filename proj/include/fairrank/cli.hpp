#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairrank::cli {

// Exit codes: 0 success, 1 internal error, 2 usage or validation error.
// Failures print one `ERROR <code>: <detail>` line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairrank::cli
