#pragma once

#include <functional>
#include <vector>

#include "counting.hpp"
#include "dynmetrics.hpp"

namespace naifs {

// Which Birkhoff sum enters the ball cost exponent: the center's maximal sum
// S_n(x), or its pool-relative sup over the Bowen ball S_n(x, delta).
enum class SumFlavor { Center, BallSup };

enum class BoundDirection { UpperBound, LowerBound, TwoSided };

struct CoverParams {
    double delta = 0.5;
    int N = 1;     // minimal ball length
    int N_max = 1; // maximal ball length
};

// Weighted Bowen-ball cover machinery over one (pool, target, delta) setup.
// Candidate balls are centered at pool points with lengths N..N_max; the
// target (a subset of the pool, by index) must be covered.
//
// On all-shift symbolic systems balls are nested cylinders, so the family is
// laminar and the exact infimum over the candidate family is computed by a
// tree recursion (also the fractional optimum, which is integral there). On
// the other spaces membership matrices are built from metric profiles and a
// greedy weighted set cover gives the upper bound; the fractional program is
// handed to the exact LP solver.
class CoverSearch {
public:
    CoverSearch(const DynMetrics& dm, const Potential& phi, const SampleSet& pool,
                std::vector<std::size_t> target, CoverParams params,
                SumFlavor flavor = SumFlavor::Center);

    struct CostResult {
        double value = 0.0;
        std::size_t cover_size = 0;
    };

    // Variable-length cover cost (upper bound on the restricted infimum).
    CostResult cost_variable(double alpha) const;
    // Fixed-length cover cost with all ball lengths forced to N.
    CostResult cost_fixed(double alpha) const;
    // Fractional covering optimum over the same candidate family.
    double cost_weighted(double alpha) const;

    EvalMode mode() const { return mode_; }
    bool target_empty() const { return target_.empty(); }
    const CoverParams& params() const { return params_; }

private:
    struct SymbolicBackend {
        std::vector<std::size_t> order;        // pool indices sorted by symbols
        std::vector<std::size_t> target_prefix; // target counts, prefix sums
        std::vector<std::vector<double>> sums; // [n - N][sorted position]
        int q = 1;                              // prefix length is n + q
        int depth_lo = 0, depth_hi = 0;         // N + q .. N_max + q
    };

    struct GenericCandidate {
        std::uint32_t center = 0;
        int length = 0;
        double sum = 0.0;                 // S_length at the center (flavored)
        std::vector<std::uint32_t> cover; // covered target positions
    };

    CostResult symbolic_cost(double alpha, bool fixed_length) const;
    CostResult generic_greedy(double alpha, bool fixed_length) const;

    const DynMetrics* dm_;
    const SampleSet* pool_;
    std::vector<std::size_t> target_;
    CoverParams params_;
    SumFlavor flavor_;
    EvalMode mode_ = EvalMode::Exact;
    bool symbolic_ = false;
    SymbolicBackend sym_;
    std::vector<GenericCandidate> cands_;
};

struct CriticalAlphaResult {
    double alpha = 0.0;
    double lo = 0.0, hi = 0.0; // bracket with cost(lo) > 1 > cost(hi)
    std::size_t cover_size = 0;
};

struct CriticalAlphaOptions {
    double bracket_lo = -4.0;
    double bracket_hi = 8.0;
    double tol = 1e-3;
    double alpha_limit = 64.0;
};

// Bisection for the alpha where a nonincreasing cover cost crosses 1. The
// initial bracket is expanded geometrically; exceeding alpha_limit raises
// UnboundedPressureError.
CriticalAlphaResult critical_alpha(const std::function<CoverSearch::CostResult(double)>& cost,
                                   const CriticalAlphaOptions& opt);

struct PressureCell {
    double delta = 0.0;
    int N = 0, N_max = 0;
    double alpha_star = 0.0;
    double alpha_lo = 0.0, alpha_hi = 0.0;
    std::size_t cover_size = 0;
    EvalMode mode = EvalMode::Exact;
};

// Critical exponent with bracket and convergence diagnostics. `value` is the
// 1/N-extrapolated intercept of the alpha*(delta, N) table at the smallest
// delta; `raw_crossing` keeps the plain crossing at the largest N, whose
// bisection bracket certifies the upper bound.
struct PressureEstimate {
    double value = 0.0;
    double raw_crossing = 0.0;
    double alpha_lo = 0.0, alpha_hi = 0.0;
    BoundDirection direction = BoundDirection::UpperBound;
    EvalMode mode = EvalMode::Exact;
    bool empty_target = false;
    std::vector<PressureCell> cells;
    std::vector<double> per_delta_value;
    std::size_t pool_size = 0;
    double fit_rmse = 0.0;
};

struct PressureGrids {
    std::vector<double> delta_grid; // strictly decreasing
    std::vector<int> N_grid;        // strictly increasing
    int window = 6;                 // N_max = N + window
    CriticalAlphaOptions alpha;
};

// Pesin-Pitskel pressure estimate from variable-length covers.
PressureEstimate pp_pressure(const DynMetrics& dm, const Potential& phi, const SampleSet& pool,
                             const std::vector<std::size_t>& target, const PressureGrids& grids,
                             SumFlavor flavor = SumFlavor::Center);

struct CapacityEstimate {
    PressureEstimate lower;
    PressureEstimate upper;
};

// Fixed-length (capacity) pressures: liminf/limsup proxies over the N tail
// window of the detrended alpha*(delta, N) sequence.
CapacityEstimate capacity_pressures(const DynMetrics& dm, const Potential& phi,
                                    const SampleSet& pool, const std::vector<std::size_t>& target,
                                    const PressureGrids& grids);

// Critical exponent of the fractional covering cost.
PressureEstimate weighted_pressure(const DynMetrics& dm, const Potential& phi,
                                   const SampleSet& pool, const std::vector<std::size_t>& target,
                                   const PressureGrids& grids);

struct SandwichRow {
    int N = 0;
    double weighted = 0.0;     // W(alpha, delta, N)
    double plain = 0.0;        // M(alpha, delta, N)
    double enlarged = 0.0;     // M(alpha + eps, 6 delta, N)
    bool left_ok = false;      // enlarged <= weighted
    bool right_ok = false;     // weighted <= plain
};

struct SandwichReport {
    std::vector<SandwichRow> rows;
    int n_threshold = 6;
    int violations = 0; // rows with N >= n_threshold failing either inequality
    EvalMode mode = EvalMode::Exact;
};

// Evaluates W(alpha,delta,N) against M(alpha,delta,N) and M(alpha+eps,6delta,N)
// on a shared pool. Report-only; small-N failures are listed but only rows at
// N >= n_threshold count as violations.
SandwichReport sandwich_check_wm(const DynMetrics& dm, const Potential& phi,
                                 const SampleSet& pool, const std::vector<std::size_t>& target,
                                 double alpha, double eps, double delta,
                                 const std::vector<int>& N_list, int window, int n_threshold);

} // namespace naifs
