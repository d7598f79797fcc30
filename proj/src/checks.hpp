#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace naifs {

struct CheckOutcome {
    std::string name;
    bool pass = false;
    std::string details;
};

// Property checks covering every module's invariants, run against the built
// experiment where applicable and against small canned instances otherwise.
std::vector<CheckOutcome> run_check_suite(const BuiltExperiment& built);

// Names of all registered checks (used to assert suite completeness).
std::vector<std::string> check_suite_names();

} // namespace naifs
