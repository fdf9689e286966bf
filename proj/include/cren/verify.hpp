#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cren {

struct VerifyConfig {
    std::vector<int> dims = {2, 3, 4};
    int grid = 11;       // points per fidelity axis, inclusive endpoints
    double tol = 1e-9;
    bool slow = false;   // enables the dense 4-qudit route for d = 5, 6
    std::uint64_t seed = 1;
};

struct CheckResult {
    std::string name;
    double worst;        // worst observed deviation; +inf for violated structure
    std::string detail;
};

/// Run the full property suite for the configured dimensions. Deterministic
/// for a fixed config. A check passes when worst <= config tol.
std::vector<CheckResult> run_verification(const VerifyConfig& config);

}  // namespace cren
