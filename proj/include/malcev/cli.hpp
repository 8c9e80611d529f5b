#ifndef MALCEV_CLI_HPP
#define MALCEV_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace malcev {

/// Dispatches one CLI invocation (args excludes the program name).
/// Returns the process exit code: 0 success, 1 failed check, 2 usage or
/// input error. All output goes to the given streams.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace malcev

#endif
