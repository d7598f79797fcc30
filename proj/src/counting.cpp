#include "counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"
#include "parallel.hpp"

namespace naifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double metric_eval(const DynMetrics& dm, MetricFlavor flavor, const Point& a, const Point& b,
                   int n, double prune_at, EvalMode* mode) {
    MetricValue v = flavor == MetricFlavor::Dn ? dm.d_n(a, b, n, prune_at)
                                               : dm.d_n_star(a, b, n, prune_at);
    if (mode) *mode = worst_mode(*mode, v.mode);
    return v.value;
}

// Smallest integer f >= 1 with 2^{-f} <= eps (valid for eps < 1). On an
// all-shift system two points are (n,eps)-separated iff their first
// difference lies before index n + f.
int shift_sep_prefix(double eps) {
    int f = static_cast<int>(std::ceil(-std::log2(eps) - 1e-9));
    if (f < 1) f = 1;
    while (std::ldexp(1.0, -f) > eps) ++f;
    return f;
}

std::string_view prefix_of(const Point& p, std::size_t len) {
    return std::string_view(p.sym).substr(0, std::min(len, p.sym.size()));
}

// Kept points indexed by their 1-D coordinate so candidates only test
// neighbours with base distance <= eps (the dynamic metric dominates the
// base metric, so farther points are separated automatically).
struct SortedKept {
    std::vector<std::pair<double, std::size_t>> by_pos; // (coordinate, sample index)

    void insert(double pos, std::size_t idx) {
        auto it = std::lower_bound(by_pos.begin(), by_pos.end(), std::make_pair(pos, idx));
        by_pos.insert(it, {pos, idx});
    }

    // Collects kept indices with |pos - cand| <= eps (wrapping on the circle).
    void neighbours(double pos, double eps, bool wrap, std::vector<std::size_t>& out) const {
        out.clear();
        if (by_pos.empty()) return;
        auto push_range = [&](double lo, double hi) {
            auto it = std::lower_bound(by_pos.begin(), by_pos.end(), std::make_pair(lo, std::size_t{0}));
            for (; it != by_pos.end() && it->first <= hi; ++it) out.push_back(it->second);
        };
        push_range(pos - eps, pos + eps);
        if (wrap) {
            if (pos - eps < 0.0) push_range(pos - eps + 1.0, 1.0 + 1e-12);
            if (pos + eps > 1.0) push_range(-1e-12, pos + eps - 1.0);
        }
    }
};

} // namespace

GreedyResult greedy_separated(const DynMetrics& dm, const SampleSet& sample, int n, double eps,
                              MetricFlavor flavor) {
    if (eps <= 0) throw RuntimeModuleError("greedy_separated: eps must be positive");
    GreedyResult out;
    const auto& pts = sample.points;
    if (pts.empty()) return out;
    const StateSpace& space = dm.system().space();

    if (eps >= space.diameter()) {
        out.indices.push_back(0);
        return out;
    }

    if (dm.system().all_shift()) {
        // separated iff the (n + f)-symbol prefix is new
        const std::size_t plen = static_cast<std::size_t>(n) + shift_sep_prefix(eps);
        std::unordered_set<std::string_view> seen;
        seen.reserve(pts.size() * 2);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (seen.insert(prefix_of(pts[i], plen)).second) out.indices.push_back(i);
        }
        return out;
    }

    const double prune = std::nextafter(eps, kInf);
    const bool one_dim = space.kind == SpaceKind::Circle || space.kind == SpaceKind::Interval;
    const bool wrap = space.kind == SpaceKind::Circle;
    SortedKept kept1d;
    std::vector<std::size_t> candidates;

    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool blocked = false;
        if (one_dim) {
            kept1d.neighbours(pts[i].x[0], eps, wrap, candidates);
        } else {
            candidates.clear();
            for (std::size_t k : out.indices)
                if (space.distance(pts[i], pts[k]) <= eps) candidates.push_back(k);
        }
        for (std::size_t k : candidates) {
            // any beam-mode evaluation marks the count as a lower bound
            const double d = metric_eval(dm, flavor, pts[i], pts[k], n, prune, &out.mode);
            if (d <= eps) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            out.indices.push_back(i);
            if (one_dim) kept1d.insert(pts[i].x[0], i);
        }
    }
    return out;
}

GreedyResult greedy_spanning(const DynMetrics& dm, const SampleSet& sample, int n, double eps,
                             MetricFlavor flavor) {
    if (eps <= 0) throw RuntimeModuleError("greedy_spanning: eps must be positive");
    GreedyResult out;
    const auto& pts = sample.points;
    if (pts.empty()) return out;
    const StateSpace& space = dm.system().space();

    if (eps >= space.diameter()) {
        out.indices.push_back(0);
        return out;
    }

    if (dm.system().all_shift()) {
        // closed-ball classes are prefix classes; every class needs one center
        const std::size_t plen = static_cast<std::size_t>(n) + shift_sep_prefix(eps);
        struct ClassInfo {
            std::size_t first = 0;
            std::size_t count = 0;
        };
        std::unordered_map<std::string_view, ClassInfo> classes;
        classes.reserve(pts.size() * 2);
        std::vector<std::string_view> order;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto [it, fresh] = classes.try_emplace(prefix_of(pts[i], plen));
            if (fresh) {
                it->second.first = i;
                order.push_back(it->first);
            }
            it->second.count++;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](const std::string_view& a, const std::string_view& b) {
                             const ClassInfo& ca = classes.at(a);
                             const ClassInfo& cb = classes.at(b);
                             if (ca.count != cb.count) return ca.count > cb.count;
                             return ca.first < cb.first;
                         });
        for (const auto& key : order) out.indices.push_back(classes.at(key).first);
        return out;
    }

    // membership matrix (closed balls), then greedy max coverage
    const std::size_t m = pts.size();
    const double prune = std::nextafter(eps, kInf);
    std::vector<std::vector<std::size_t>> covers(m);
    std::vector<EvalMode> modes(m, EvalMode::Exact);
    parallel_for(m, [&](std::size_t c) {
        for (std::size_t z = 0; z < m; ++z) {
            if (space.distance(pts[c], pts[z]) > eps) continue; // d_n >= base
            EvalMode em = EvalMode::Exact;
            const double d = metric_eval(dm, flavor, pts[c], pts[z], n, prune, &em);
            modes[c] = worst_mode(modes[c], em);
            // uncertain membership is skipped: the cover stays valid and the
            // count stays an upper bound
            if (d <= eps && em == EvalMode::Exact) covers[c].push_back(z);
        }
    });

    for (EvalMode em : modes) out.mode = worst_mode(out.mode, em);

    std::vector<char> covered(m, 0);
    std::size_t remaining = m;
    while (remaining > 0) {
        std::size_t best = m;
        std::size_t best_gain = 0;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t gain = 0;
            for (std::size_t z : covers[c])
                if (!covered[z]) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        if (best == m) throw NoCoverError("greedy_spanning: sample not coverable at this eps");
        out.indices.push_back(best);
        for (std::size_t z : covers[best]) {
            if (!covered[z]) {
                covered[z] = 1;
                --remaining;
            }
        }
    }
    return out;
}

VitaliResult vitali_subfamily(const DynMetrics& dm, const CoverFamily& balls, int enlargement) {
    if (enlargement != 3 && enlargement != 5)
        throw RuntimeModuleError("vitali_subfamily: enlargement must be 3 or 5");
    VitaliResult out;
    if (balls.items.empty()) return out;
    const double r = balls.items.front().radius;
    const int n = balls.items.front().length;
    for (const CoverItem& it : balls.items) {
        if (std::fabs(it.radius - r) > 1e-15 || it.length != n)
            throw RuntimeModuleError("vitali_subfamily: balls must share one radius and length");
    }

    const double gap = 2.0 * r;
    const double prune = std::nextafter(gap, kInf);
    for (const CoverItem& cand : balls.items) {
        bool blocked = false;
        for (const CoverItem& sel : out.family.items) {
            MetricValue v = dm.d_n(cand.center, sel.center, n, prune);
            out.mode = worst_mode(out.mode, v.mode);
            if (v.value <= gap) {
                blocked = true;
                break;
            }
        }
        if (!blocked) out.family.items.push_back(cand);
    }
    return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

std::size_t fit_window(std::size_t len) {
    return std::max<std::size_t>(3, (len + 1) / 2);
}

EntropyEstimate sup_entropy(const DynMetrics& dm, const SampleSet& sample,
                            const std::vector<int>& n_range, const std::vector<double>& eps_range,
                            MetricFlavor flavor) {
    if (n_range.size() < 4)
        throw RuntimeModuleError("sup_entropy: n_range needs at least 4 entries");
    if (eps_range.empty()) throw RuntimeModuleError("sup_entropy: eps_range is empty");
    for (std::size_t i = 1; i < eps_range.size(); ++i)
        if (eps_range[i] >= eps_range[i - 1])
            throw RuntimeModuleError("sup_entropy: eps_range must be strictly decreasing");
    if (fit_window(n_range.size()) > n_range.size())
        throw RuntimeModuleError("sup_entropy: degenerate fit window");

    EntropyEstimate est;
    est.n_range = n_range;
    est.eps_range = eps_range;
    est.log_counts.assign(eps_range.size(), std::vector<double>(n_range.size(), 0.0));

    const std::size_t cells = eps_range.size() * n_range.size();
    std::vector<EvalMode> modes(cells, EvalMode::Exact);
    parallel_for(cells, [&](std::size_t cell) {
        const std::size_t e = cell / n_range.size();
        const std::size_t ni = cell % n_range.size();
        GreedyResult g = greedy_separated(dm, sample, n_range[ni], eps_range[e], flavor);
        est.log_counts[e][ni] = std::log(static_cast<double>(g.indices.size()));
        modes[cell] = g.mode;
    });
    for (EvalMode m : modes) est.mode = worst_mode(est.mode, m);

    const std::size_t w = fit_window(n_range.size());
    std::vector<double> xs(w), ys(w);
    for (std::size_t e = 0; e < eps_range.size(); ++e) {
        for (std::size_t j = 0; j < w; ++j) {
            const std::size_t idx = n_range.size() - w + j;
            xs[j] = static_cast<double>(n_range[idx]);
            ys[j] = est.log_counts[e][idx];
        }
        est.slopes.push_back(least_squares_slope(xs, ys));
    }
    est.value = est.slopes.back();
    return est;
}

} // namespace naifs
