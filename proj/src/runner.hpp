#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace naifs {

struct RunOptions {
    std::string output_dir;  // overrides the config's [output] dir when set
    std::string cache_dir;   // "" = ResultCache::default_dir(); "none" disables
    bool write_files = true;
};

// Dispatches the config's task, reusing cached task results when the config
// hash matches. Partial failures produce a report with a failure marker and
// rethrow after persisting it.
RunReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Cartesian sweep over the [sweep] section of the config text; each cell is
// run into its own subdirectory. Returns the per-cell reports.
std::vector<RunReport> run_sweep(const std::string& config_text, const std::string& name,
                                 const RunOptions& opt = {});

} // namespace naifs
