#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "potential.hpp"
#include "system.hpp"

namespace naifs {

enum class EvalMode { Exact, LowerBound };

inline EvalMode worst_mode(EvalMode a, EvalMode b) {
    return (a == EvalMode::LowerBound || b == EvalMode::LowerBound) ? EvalMode::LowerBound
                                                                    : EvalMode::Exact;
}

// Exhaustive word-tree search is used while the leaf count stays within
// node_budget; beyond that a beam of beam_width states per level is kept and
// every result is flagged as a lower bound.
struct TreeBudget {
    std::uint64_t node_budget = 1ull << 22;
    std::size_t beam_width = 4096;
};

struct MetricValue {
    double value = 0.0;
    EvalMode mode = EvalMode::Exact;
};

struct ProfileValue {
    std::vector<double> values; // index t
    EvalMode mode = EvalMode::Exact;
};

// Word-maximal dynamical metrics and maximal Birkhoff sums for one system.
// All evaluations are pure; instances are safe to share across threads.
class DynMetrics {
public:
    explicit DynMetrics(const NaifsSystem& sys, TreeBudget budget = {})
        : sys_(&sys), budget_(budget) {}

    const NaifsSystem& system() const { return *sys_; }
    const TreeBudget& budget() const { return budget_; }

    // max over words from start time 1 and 0 <= t <= n of the orbit distance.
    // The search may stop once the running maximum reaches prune_at; the
    // result is then some value >= prune_at instead of the exact metric.
    MetricValue d_n(const Point& x, const Point& y, int n,
                    double prune_at = std::numeric_limits<double>::infinity()) const;

    // Additionally maximizes over the start-time classes 1..schedule_classes().
    MetricValue d_n_star(const Point& x, const Point& y, int n,
                         double prune_at = std::numeric_limits<double>::infinity()) const;

    // d_t(x, y) for all 0 <= t <= n_hi in one tree pass. Entries that reach
    // prune_at are only guaranteed to be >= prune_at.
    ProfileValue d_n_profile(const Point& x, const Point& y, int n_hi,
                             double prune_at = std::numeric_limits<double>::infinity()) const;

    struct Containment {
        bool inside = false;
        bool certain = true;
    };
    // Open-ball membership: inside iff d_n(center, x) < delta. Under beam
    // mode a small lower bound cannot certify membership, so inside=true is
    // returned with certain=false (covers treat it as contained).
    Containment bowen_ball_contains(const Point& center, const Point& x, int n,
                                    double delta) const;

    // max over length-n words of sum_{i<n} phi(f_w^{1,i}(x)).
    MetricValue birkhoff_max(const Potential& phi, const Point& x, int n) const;

    // Maximal Birkhoff sums for every length 0..n_hi in one pass.
    ProfileValue birkhoff_profile(const Potential& phi, const Point& x, int n_hi) const;

    // Pool-relative sup of S_n phi over the open Bowen ball around x.
    MetricValue birkhoff_ball_sup(const Potential& phi, const Point& x, int n, double delta,
                                  const std::vector<Point>& pool) const;

    bool exhaustive(std::size_t start, int n) const {
        return sys_->word_count(start, n, budget_.node_budget + 1) <= budget_.node_budget;
    }

private:
    MetricValue d_n_from(std::size_t start, const Point& x, const Point& y, int n,
                         double prune_at) const;
    ProfileValue d_n_profile_from(std::size_t start, const Point& x, const Point& y, int n_hi,
                                  double prune_at) const;

    const NaifsSystem* sys_;
    TreeBudget budget_;
};

} // namespace naifs
