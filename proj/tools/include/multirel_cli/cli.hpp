#pragma once

// The `multirel` command line, callable in-process for tests.

#include <ostream>
#include <string>
#include <vector>

namespace multirel::cli {

/// Exit codes: 0 success or valid, 1 counterexample / nothing found / failed
/// demo or self-test, 2 usage, syntax or type error, 3 resource limit.
enum Exit : int { kOk = 0, kFound = 1, kUsage = 2, kLimit = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multirel::cli
