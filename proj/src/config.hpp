#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynmetrics.hpp"
#include "measures.hpp"
#include "potential.hpp"
#include "sampling.hpp"
#include "system.hpp"

namespace naifs {

enum class TaskKind {
    SupEntropy,
    PpPressure,
    Capacity,
    Weighted,
    MeasurePressure,
    Variational,
    CheckSuite
};

std::string task_name(TaskKind k);

// Declarative experiment description parsed from the sectioned key-value
// format (see README). Everything is validated up front; `canonical()`
// re-emits the resolved configuration in a fixed order for hashing.
struct ExperimentConfig {
    std::string name = "config";
    std::uint64_t seed = 0;

    // [system]
    StateSpace space;
    std::vector<GeneratorFamily> preamble;
    std::vector<GeneratorFamily> period;

    // [potential]
    Potential potential;

    // [target]
    enum class TargetKind { WholeSpace, Cylinders, Points, Grid };
    TargetKind target_kind = TargetKind::WholeSpace;
    std::vector<std::string> target_cylinders;
    std::vector<std::string> target_points; // literals, space-kind dependent
    std::size_t target_grid_count = 0;
    double target_lo = 0.0, target_hi = 1.0;
    int sample_depth = 0;        // symbolic; 0 = derive from the grids
    std::size_t pool_count = 0;  // continuous; 0 = derive from the grids

    // [grids]
    std::vector<int> n_range;
    std::vector<double> eps_grid;
    std::vector<double> delta_grid;
    std::vector<int> N_grid;
    int N_window = 6;
    std::uint64_t node_budget = 1ull << 22;
    std::size_t beam_width = 4096;
    double bisect_tol = 1e-3;
    double bracket_lo = -4.0, bracket_hi = 8.0;
    std::vector<double> r_grid;
    int n_window_lo = 8, n_window_hi = 16;

    // [task]
    TaskKind task = TaskKind::SupEntropy;
    bool with_prime = false;
    double alpha = 0.5;
    double sandwich_eps = 0.2;
    MetricFlavor entropy_metric = MetricFlavor::DnStar;

    // [measures]
    enum class MeasuresKind { None, BernoulliGrid, Bernoulli, Atomic, Sampled };
    MeasuresKind measures_kind = MeasuresKind::None;
    double p_from = 0.05, p_to = 0.95;
    int p_count = 19;
    std::vector<double> measure_probs;
    std::vector<std::string> measure_points;
    std::vector<double> measure_weights;
    std::size_t sampled_count = 0;
    std::size_t mc_count = 200;
    std::uint64_t mc_seed = 0;
    double combined_tol = 0.1;

    // [output]
    std::string output_dir = "out";
    std::vector<std::string> formats{"json", "csv", "txt"};

    // [sweep]: dotted-key -> alternative raw values (cartesian product)
    std::vector<std::pair<std::string, std::vector<std::string>>> sweep;

    std::string canonical() const;
    std::string hash() const;
};

// Parses and fully validates; throws ValidationError carrying every problem
// found (syntax, unknown keys with suggestions, grid shape, map parameters).
ExperimentConfig parse_config_text(const std::string& text, const std::string& name);
ExperimentConfig parse_config_file(const std::string& path);

// Applies a raw `key = value` override to a parsed text (used by sweeps).
std::string apply_override(const std::string& text, const std::string& dotted_key,
                           const std::string& value);

// Everything an executor needs, built and validated from a config. The
// system and metrics live behind pointers so the struct stays movable while
// DynMetrics keeps a stable reference to the system.
struct BuiltExperiment {
    ExperimentConfig config;
    std::unique_ptr<NaifsSystem> system;
    std::unique_ptr<DynMetrics> metrics;
    Potential potential;
    SampleSet pool;
    std::vector<std::size_t> target;
    std::vector<BorelMeasure> measures;
};

BuiltExperiment build_experiment(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

} // namespace naifs
