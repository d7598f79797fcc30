#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pressure.hpp"

namespace naifs {

enum class MeasureKind { Atomic, Bernoulli, Sampled };

// Borel probability measure in one of three computable forms:
//   atomic     finitely many atoms with positive weights summing to 1
//   bernoulli  product measure on a symbolic space (one probability per symbol)
//   sampled    empirical measure of `sample_count` draws from a named
//              generator ("uniform"), reproducible from `seed`
struct BorelMeasure {
    MeasureKind kind = MeasureKind::Atomic;
    std::string label;

    std::vector<Point> atoms;
    std::vector<double> weights;

    std::vector<double> probs;

    std::string generator = "uniform";
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;

    void validate(const NaifsSystem& sys, std::vector<std::string>& errors) const;

    // i.i.d. draw keyed by (seed, index): parallel schedules cannot change it.
    Point draw(const NaifsSystem& sys, std::uint64_t index) const;

    static BorelMeasure dirac(Point x) {
        BorelMeasure m;
        m.kind = MeasureKind::Atomic;
        m.atoms = {std::move(x)};
        m.weights = {1.0};
        return m;
    }
    static BorelMeasure bernoulli(std::vector<double> p) {
        BorelMeasure m;
        m.kind = MeasureKind::Bernoulli;
        m.probs = std::move(p);
        return m;
    }
};

struct BallMass {
    double value = 0.0;
    double half_width = 0.0; // Wilson interval (sampled measures only)
    bool exact = true;
};

// mu(B_n(x, r)) for the open Bowen ball. Atomic: exact sum of member atom
// weights. Bernoulli: exact cylinder mass, requires r to be a power of 1/2.
// Sampled: empirical fraction with a Wilson half-width attached.
BallMass ball_measure(const DynMetrics& dm, const BorelMeasure& mu, const Point& x, int n,
                      double r);

// Local lower pressure at x: per-(r, n) values of
// (-log mu(B_n(x,r)) + S_n phi(x)) / n, a liminf proxy per r (min over the
// tail half of the n window) and the limit proxy at the smallest r.
struct LocalPressureValue {
    std::vector<double> r_grid;                 // decreasing
    std::vector<int> n_values;                  // n_lo..n_hi
    std::vector<std::vector<double>> quantities; // [r][n]
    std::vector<double> liminf_per_r;
    double value = 0.0;
    bool stabilized = false;   // last two r proxies differ by < 0.02
    bool undersampled = false; // some ball had zero empirical mass
    EvalMode mode = EvalMode::Exact;
};

LocalPressureValue local_lower_pressure(const DynMetrics& dm, const BorelMeasure& mu,
                                        const Potential& phi, const Point& x,
                                        const std::vector<double>& r_grid, int n_lo, int n_hi);

enum class IntegrationKind { ExactAtomic, MonteCarlo };

struct MeasurePressureResult {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t points = 0;
    bool undersampled = false;
    EvalMode mode = EvalMode::Exact;
};

// Integral of the local lower pressure against mu: a weighted sum over atoms,
// or a seeded Monte-Carlo mean with its standard error.
MeasurePressureResult measure_pressure(const DynMetrics& dm, const BorelMeasure& mu,
                                       const Potential& phi, const std::vector<double>& r_grid,
                                       int n_lo, int n_hi, IntegrationKind integration,
                                       std::size_t mc_count = 0, std::uint64_t mc_seed = 0);

// Frostman-type bound check: mu(B_n(x, eps)) <= (1/c) exp(-alpha n + S_n phi(x))
// over a test grid and n in [N, n_max]. Report-only.
struct FrostmanReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_slack = -std::numeric_limits<double>::infinity(); // log-scale excess
    int worst_n = 0;
    std::size_t worst_index = 0;
    EvalMode mode = EvalMode::Exact;
};

FrostmanReport frostman_inequality_check(const DynMetrics& dm, const BorelMeasure& mu,
                                         const SampleSet& test_grid, const Potential& phi,
                                         double alpha, double eps, int N, int n_max, double c);

// Variational gap: S = max of the family's measure pressures vs the cover
// pressure P of the target. The one-sided contract S <= P + tol is asserted;
// gap smallness is reported, not asserted.
struct VariationalReport {
    std::vector<double> member_values;
    std::vector<double> member_errors;
    std::size_t argmax = 0;
    double sup_measure_pressure = 0.0;
    double pressure = 0.0;
    double gap = 0.0;
    bool contract_ok = true;
    EvalMode mode = EvalMode::Exact;
};

struct MeasureGrids {
    std::vector<double> r_grid; // decreasing
    int n_lo = 8, n_hi = 16;
    std::size_t mc_count = 200;
    std::uint64_t mc_seed = 0;
};

VariationalReport variational_gap(const DynMetrics& dm, const std::vector<BorelMeasure>& family,
                                  const Potential& phi, const SampleSet& pool,
                                  const std::vector<std::size_t>& target,
                                  const PressureGrids& pressure_grids, const MeasureGrids& mg,
                                  double combined_tol);

// Verifies that mu gives the target full mass (atomic: every atom is a target
// point; bernoulli/sampled: the target must be the whole pool). Throws
// ValidationError otherwise.
void require_full_mass(const NaifsSystem& sys, const BorelMeasure& mu, const SampleSet& pool,
                       const std::vector<std::size_t>& target);

// Theorem-style direction probes: for each s, check the two implications
//   (all sampled local pressures <= s)  =>  pressure <= s + tol
//   (all >= s and mu(Z) > 0)            =>  pressure >= s - tol
struct Theorem1Row {
    double probe = 0.0;
    bool premise_le = false, premise_ge = false;
    bool implication_le_ok = true, implication_ge_ok = true;
};

struct Theorem1Report {
    std::vector<Theorem1Row> rows;
    int violations = 0;
    double local_min = 0.0, local_max = 0.0;
    double pressure = 0.0;
    EvalMode mode = EvalMode::Exact;
};

Theorem1Report theorem1_bounds_check(const DynMetrics& dm, const BorelMeasure& mu,
                                     const Potential& phi, const MeasureGrids& mg,
                                     const std::vector<double>& probes, double tol,
                                     double pressure_value);

} // namespace naifs
