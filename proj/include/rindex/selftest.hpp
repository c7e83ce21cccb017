/* selftest.hpp — built-in acceptance checks runnable from tests and the CLI */

#pragma once

#include <string>
#include <vector>

namespace ridx {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // summary statistics, or the first failure
};

// runs every acceptance check; quick mode shrinks the generated corpus but
// keeps each check's logic identical
std::vector<CheckResult> run_acceptance_checks(bool quick);

}  // namespace ridx
