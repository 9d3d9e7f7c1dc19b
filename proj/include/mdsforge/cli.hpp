#pragma once
// The command-line front end, shaped for testing: run_cli takes argv-style
// arguments (program name excluded) and writes to the streams it is handed.
// Exit codes: 0 success / predicate true, 1 predicate false or disagreement,
// 2 usage or parse error, 3 domain error.

#include <iosfwd>
#include <string>
#include <vector>

namespace mdsforge {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdsforge
