#include "dynmetrics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace naifs {

namespace {

// d_n for systems whose generators are all the shift: the whole word tree
// collapses to one orbit and the value follows from the first difference.
double shift_metric(const Point& x, const Point& y, int n) {
    const std::size_t i = first_difference(x.sym, y.sym);
    if (i >= x.sym.size() && i >= y.sym.size()) return 0.0;
    if (i <= static_cast<std::size_t>(n)) return 1.0;
    return std::ldexp(1.0, n - static_cast<int>(i));
}

struct BeamState {
    Point a;
    Point b;
    double score;
};

struct BeamSumState {
    Point p;
    double sum;
};

} // namespace

MetricValue DynMetrics::d_n_from(std::size_t start, const Point& x, const Point& y, int n,
                                 double prune_at) const {
    const StateSpace& space = sys_->space();
    if (sys_->all_shift()) return {shift_metric(x, y, n), EvalMode::Exact};

    const double cap = std::min(prune_at, space.diameter());
    double best = space.distance(x, y);
    if (best <= StateSpace::kPointTol) return {best, EvalMode::Exact}; // equal points stay equal
    if (best >= cap || n == 0) return {best, EvalMode::Exact};

    if (exhaustive(start, n)) {
        // depth-first over the word tree; the metric is the max node distance
        struct Frame {
            Point a, b;
            int t;
        };
        std::vector<Frame> stack;
        stack.push_back({x, y, 0});
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            const GeneratorFamily& fam = sys_->family_at(start + static_cast<std::size_t>(f.t));
            for (std::size_t i = 0; i < fam.size(); ++i) {
                Point fa = fam[i].apply(space, f.a);
                Point fb = fam[i].apply(space, f.b);
                best = std::max(best, space.distance(fa, fb));
                if (best >= cap) return {best, EvalMode::Exact};
                if (f.t + 1 < n) stack.push_back({std::move(fa), std::move(fb), f.t + 1});
            }
        }
        return {best, EvalMode::Exact};
    }

    // beam fallback: keep the currently-widest pairs, result is a lower bound
    std::vector<BeamState> beam{{x, y, best}};
    for (int t = 0; t < n; ++t) {
        const GeneratorFamily& fam = sys_->family_at(start + static_cast<std::size_t>(t));
        std::vector<BeamState> next;
        next.reserve(beam.size() * fam.size());
        for (const BeamState& s : beam) {
            for (const MapSpec& m : fam) {
                BeamState ns{m.apply(space, s.a), m.apply(space, s.b), 0.0};
                ns.score = space.distance(ns.a, ns.b);
                best = std::max(best, ns.score);
                if (best >= cap) return {best, EvalMode::LowerBound};
                next.push_back(std::move(ns));
            }
        }
        if (next.size() > budget_.beam_width) {
            std::stable_sort(next.begin(), next.end(),
                             [](const BeamState& l, const BeamState& r) { return l.score > r.score; });
            next.resize(budget_.beam_width);
        }
        beam = std::move(next);
    }
    return {best, EvalMode::LowerBound};
}

MetricValue DynMetrics::d_n(const Point& x, const Point& y, int n, double prune_at) const {
    return d_n_from(1, x, y, n, prune_at);
}

MetricValue DynMetrics::d_n_star(const Point& x, const Point& y, int n, double prune_at) const {
    if (sys_->all_shift()) return {shift_metric(x, y, n), EvalMode::Exact};
    MetricValue out{0.0, EvalMode::Exact};
    for (std::size_t start = 1; start <= sys_->schedule_classes(); ++start) {
        MetricValue v = d_n_from(start, x, y, n, prune_at);
        out.value = std::max(out.value, v.value);
        out.mode = worst_mode(out.mode, v.mode);
        if (out.value >= prune_at) return out;
    }
    return out;
}

ProfileValue DynMetrics::d_n_profile_from(std::size_t start, const Point& x, const Point& y,
                                          int n_hi, double prune_at) const {
    const StateSpace& space = sys_->space();
    ProfileValue out;
    out.values.assign(static_cast<std::size_t>(n_hi) + 1, 0.0);

    if (sys_->all_shift()) {
        for (int t = 0; t <= n_hi; ++t) out.values[t] = shift_metric(x, y, t);
        return out;
    }

    // level[t] = max distance among depth-t nodes, then prefix-max.
    std::vector<double> level(static_cast<std::size_t>(n_hi) + 1, 0.0);
    level[0] = space.distance(x, y);
    if (level[0] <= StateSpace::kPointTol) {
        out.values.assign(static_cast<std::size_t>(n_hi) + 1, level[0]);
        return out;
    }
    // once some depth reaches prune_at every later entry is >= prune_at, so
    // recursion never needs to descend past the shallowest saturated depth
    int stop_depth = level[0] >= prune_at ? 0 : n_hi;

    if (exhaustive(start, n_hi)) {
        struct Frame {
            Point a, b;
            int t;
        };
        std::vector<Frame> stack;
        if (stop_depth > 0) stack.push_back({x, y, 0});
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            if (f.t >= stop_depth) continue;
            const GeneratorFamily& fam = sys_->family_at(start + static_cast<std::size_t>(f.t));
            for (std::size_t i = 0; i < fam.size(); ++i) {
                Point fa = fam[i].apply(space, f.a);
                Point fb = fam[i].apply(space, f.b);
                const double d = space.distance(fa, fb);
                const int depth = f.t + 1;
                level[depth] = std::max(level[depth], d);
                if (d >= prune_at) stop_depth = std::min(stop_depth, depth);
                if (depth < stop_depth) stack.push_back({std::move(fa), std::move(fb), depth});
            }
        }
    } else {
        out.mode = EvalMode::LowerBound;
        std::vector<BeamState> beam{{x, y, level[0]}};
        for (int t = 0; t < n_hi && t < stop_depth; ++t) {
            const GeneratorFamily& fam = sys_->family_at(start + static_cast<std::size_t>(t));
            std::vector<BeamState> next;
            next.reserve(beam.size() * fam.size());
            for (const BeamState& s : beam) {
                for (const MapSpec& m : fam) {
                    BeamState ns{m.apply(space, s.a), m.apply(space, s.b), 0.0};
                    ns.score = space.distance(ns.a, ns.b);
                    level[t + 1] = std::max(level[t + 1], ns.score);
                    if (ns.score >= prune_at) stop_depth = std::min(stop_depth, t + 1);
                    next.push_back(std::move(ns));
                }
            }
            if (next.size() > budget_.beam_width) {
                std::stable_sort(next.begin(), next.end(), [](const BeamState& l, const BeamState& r) {
                    return l.score > r.score;
                });
                next.resize(budget_.beam_width);
            }
            beam = std::move(next);
        }
    }

    double run = 0.0;
    for (int t = 0; t <= n_hi; ++t) {
        run = std::max(run, level[t]);
        out.values[t] = run;
    }
    return out;
}

ProfileValue DynMetrics::d_n_profile(const Point& x, const Point& y, int n_hi,
                                     double prune_at) const {
    return d_n_profile_from(1, x, y, n_hi, prune_at);
}

DynMetrics::Containment DynMetrics::bowen_ball_contains(const Point& center, const Point& x,
                                                        int n, double delta) const {
    MetricValue v = d_n(center, x, n, delta);
    if (v.value >= delta) return {false, true};
    return {true, v.mode == EvalMode::Exact};
}

MetricValue DynMetrics::birkhoff_max(const Potential& phi, const Point& x, int n) const {
    ProfileValue prof = birkhoff_profile(phi, x, n);
    return {prof.values[static_cast<std::size_t>(n)], prof.mode};
}

ProfileValue DynMetrics::birkhoff_profile(const Potential& phi, const Point& x, int n_hi) const {
    const StateSpace& space = sys_->space();
    ProfileValue out;
    out.values.assign(static_cast<std::size_t>(n_hi) + 1, -std::numeric_limits<double>::infinity());
    out.values[0] = 0.0;

    // single-orbit systems (all shifts, or singleton families everywhere)
    bool single_path = true;
    for (std::size_t j = 1; j <= sys_->schedule_classes() && single_path; ++j)
        if (sys_->family_at(j).size() > 1) single_path = false;
    // All-shift families give the same orbit for every word, so the single
    // path is exact there as well.
    if (sys_->all_shift() || single_path) {
        Point p = x;
        double sum = 0.0;
        for (int t = 1; t <= n_hi; ++t) {
            sum += phi.eval(space, p);
            p = sys_->family_at(static_cast<std::size_t>(t))[0].apply(space, p);
            out.values[t] = sum;
        }
        return out;
    }

    const double sup_phi = phi.sup(space);

    if (exhaustive(1, n_hi)) {
        struct Frame {
            Point p;
            double sum;
            int t;
        };
        std::vector<Frame> stack;
        stack.push_back({x, 0.0, 0});
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            const double here = phi.eval(space, f.p);
            // prune when no reachable depth can improve its incumbent
            bool useful = false;
            for (int tau = f.t + 1; tau <= n_hi; ++tau) {
                if (f.sum + here + (tau - f.t - 1) * sup_phi > out.values[tau] + 1e-15) {
                    useful = true;
                    break;
                }
            }
            if (!useful) continue;
            const double nsum = f.sum + here;
            const int depth = f.t + 1;
            out.values[depth] = std::max(out.values[depth], nsum);
            if (depth < n_hi) {
                const GeneratorFamily& fam = sys_->family_at(static_cast<std::size_t>(f.t) + 1);
                for (std::size_t i = 0; i < fam.size(); ++i)
                    stack.push_back({fam[i].apply(space, f.p), nsum, depth});
            }
        }
        return out;
    }

    out.mode = EvalMode::LowerBound;
    std::vector<BeamSumState> beam{{x, 0.0}};
    for (int t = 0; t < n_hi; ++t) {
        const GeneratorFamily& fam = sys_->family_at(static_cast<std::size_t>(t) + 1);
        std::vector<BeamSumState> next;
        next.reserve(beam.size() * fam.size());
        for (const BeamSumState& s : beam) {
            const double nsum = s.sum + phi.eval(space, s.p);
            out.values[t + 1] = std::max(out.values[t + 1], nsum);
            for (const MapSpec& m : fam) next.push_back({m.apply(space, s.p), nsum});
        }
        if (next.size() > budget_.beam_width) {
            std::stable_sort(next.begin(), next.end(), [](const BeamSumState& l, const BeamSumState& r) {
                return l.sum > r.sum;
            });
            next.resize(budget_.beam_width);
        }
        beam = std::move(next);
    }
    return out;
}

MetricValue DynMetrics::birkhoff_ball_sup(const Potential& phi, const Point& x, int n,
                                          double delta, const std::vector<Point>& pool) const {
    if (pool.empty()) throw RuntimeModuleError("birkhoff_ball_sup: empty pool");
    MetricValue out{-std::numeric_limits<double>::infinity(), EvalMode::Exact};
    bool any = false;
    for (const Point& y : pool) {
        Containment c = bowen_ball_contains(x, y, n, delta);
        if (!c.inside) continue;
        if (!c.certain) out.mode = EvalMode::LowerBound;
        MetricValue s = birkhoff_max(phi, y, n);
        out.value = std::max(out.value, s.value);
        out.mode = worst_mode(out.mode, s.mode);
        any = true;
    }
    if (!any) throw RuntimeModuleError("birkhoff_ball_sup: x must belong to the pool");
    return out;
}

} // namespace naifs
