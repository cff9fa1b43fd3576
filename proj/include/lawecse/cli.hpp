#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lawecse {

// Command-line front end. Subcommands: rooted, root-to-root, unrooted,
// oracle, matching, bench. Solver output is a single JSON object on stdout;
// bench emits CSV. Exit codes: 0 success, 2 infeasible result, 1 input
// error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace lawecse
