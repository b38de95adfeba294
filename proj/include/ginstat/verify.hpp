#pragma once

#include <string>
#include <vector>

namespace ginstat::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Exact-identity suites: "pfaffian", "quaternion", "combinatorics",
/// "specialfn", "eigensolver", or "all". Throws on unknown names.
std::vector<CheckResult> run_suite(const std::string& suite);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace ginstat::verify
