#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reflekt {

// Runs the command-line surface on `args` (program name excluded).  Input
// documents come from files or, for the path "-", from `in`; the single
// JSON result document goes to `out` unless redirected by --out, and a
// one-line human summary goes to `err`.
//
// Returns the process exit code: 0 for success or an affirmative verdict,
// 1 for a negative verdict (a witness was found), 2 for an undecided
// verdict, 3 for input or usage errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace reflekt
