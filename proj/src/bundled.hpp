#pragma once

#include <string>
#include <vector>

namespace naifs {

// Built-in experiment configurations: the exactly-solvable instances the
// acceptance suite runs, also usable directly via `run`.
struct BundledConfig {
    std::string name;
    std::string text;
};

const std::vector<BundledConfig>& bundled_configs();
const std::string& bundled_config(const std::string& name);

} // namespace naifs
