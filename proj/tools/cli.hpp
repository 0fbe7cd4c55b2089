#ifndef MSW_TOOLS_CLI_HPP
#define MSW_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace msw::cli {

/// Exit codes: 0 solved/valid, 1 infeasible, 2 budget exhausted, 3 usage
/// or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msw::cli

#endif
