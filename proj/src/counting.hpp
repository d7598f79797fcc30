#pragma once

#include <cstddef>
#include <vector>

#include "dynmetrics.hpp"

namespace naifs {

// Finite stand-in for a target subset: a gamma-dense list of points.
// Members must be pairwise distinct (base distance > 1e-12).
struct SampleSet {
    std::vector<Point> points;
    double density = 0.0; // declared gamma; 0 = unspecified
};

enum class MetricFlavor { Dn, DnStar };

struct GreedyResult {
    std::vector<std::size_t> indices; // into the sample, selection order
    EvalMode mode = EvalMode::Exact;
};

// Maximal (n,eps)-separated subset of the sample: fixed scan order, a point
// is kept iff its metric to every kept point exceeds eps. Cardinality lower
// bounds s(n,eps,.) restricted to the sample.
GreedyResult greedy_separated(const DynMetrics& dm, const SampleSet& sample, int n, double eps,
                              MetricFlavor flavor);

// Greedy covering of the sample by closed metric balls of radius eps centered
// at sample points (largest new coverage first, ties by index). Cardinality
// upper bounds the sample's minimal spanning count.
GreedyResult greedy_spanning(const DynMetrics& dm, const SampleSet& sample, int n, double eps,
                             MetricFlavor flavor);

// Bowen ball with an optional fractional weight.
struct CoverItem {
    Point center;
    int length = 1;
    double radius = 0.0;
    double weight = 1.0;
};

struct CoverFamily {
    std::vector<CoverItem> items;
};

struct VitaliResult {
    CoverFamily family;
    EvalMode mode = EvalMode::Exact;
};

// Disjoint subfamily in the Vitali sense: selected centers are pairwise
// more than 2r apart in d_n, and every input ball lies inside the
// `enlargement`-times blow-up of some selected ball. All input balls must
// share one radius and one length; enlargement is 3 or 5.
VitaliResult vitali_subfamily(const DynMetrics& dm, const CoverFamily& balls, int enlargement);

struct EntropyEstimate {
    std::vector<int> n_range;
    std::vector<double> eps_range;                // decreasing
    std::vector<std::vector<double>> log_counts;  // [eps][n]
    std::vector<double> slopes;                   // per eps, tail-window least squares
    double value = 0.0;                           // slope at the smallest eps
    EvalMode mode = EvalMode::Exact;
};

// Growth-rate estimate of separated counts: tabulates log cardinalities,
// fits the tail window (last half of n_range, at least 3 points) per eps and
// reports the slope at the smallest eps.
EntropyEstimate sup_entropy(const DynMetrics& dm, const SampleSet& sample,
                            const std::vector<int>& n_range, const std::vector<double>& eps_range,
                            MetricFlavor flavor = MetricFlavor::DnStar);

// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// Tail window size used by slope fits: the last half, never below 3.
std::size_t fit_window(std::size_t len);

} // namespace naifs
