#pragma once
// Command-line surface, testable without a process boundary: run_cli takes
// argv minus the program name plus the two output streams, and returns the
// process exit code. 0 success, 1 verification discrepancy, 2 bad flags or
// file parse error, 3 unknown label.

#include <iosfwd>
#include <string>
#include <vector>

namespace flca {

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace flca
