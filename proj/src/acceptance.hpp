#pragma once

#include <string>
#include <vector>

namespace naifs {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

// Runs the full acceptance suite on the bundled exactly-solvable instances.
// Every tolerance is pinned in code; one result per criterion.
std::vector<CriterionResult> run_acceptance();

inline bool all_passed(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

} // namespace naifs
