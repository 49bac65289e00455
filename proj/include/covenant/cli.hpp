#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace covenant::cli {

// Drives the covsolve command line: check / solve / sweep / simulate /
// statics. Returns the process exit code: 0 success, 1 invalid input or
// failed validation, 2 solver or I/O failure, 3 sign-table mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covenant::cli
