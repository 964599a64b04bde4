#pragma once

// Batch command-line interface: counting, classification, verification
// suites, sampling, the slope-flattening map, and statistics, with
// machine-readable outputs.
//
// Exit codes: 0 success, 1 invariant violation (a JSON violation report is
// emitted), 2 usage error, 3 infeasible (TooLarge / WindowUnstable).

#include <string>
#include <vector>

namespace tricolor::cli {

int run(const std::vector<std::string>& args);

}  // namespace tricolor::cli
