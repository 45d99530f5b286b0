#pragma once

#include <string>
#include <vector>

namespace lowzero {

struct SelftestResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Invariant suites of all modules; quick keeps grid sizes and sample counts
// small enough for a sub-minute run.
std::vector<SelftestResult> run_selftest(bool quick);

}  // namespace lowzero
