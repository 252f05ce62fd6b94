#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dfadec {

// Runs one CLI invocation. Reports go to `out` as a single JSON object (or
// the generated artifact for generate/convert); diagnostics go to `err`.
// Exit status: 0 = decided, 1 = usage or input error, 2 = inconclusive
// (a cap was exhausted before a verdict).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfadec
