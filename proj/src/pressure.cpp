#include "pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "errors.hpp"
#include "parallel.hpp"
#include "simplex.hpp"

namespace naifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest q >= 1 with 2^{-q} < delta: on an all-shift system the open ball
// B_n(x, delta) is exactly the (n + q)-symbol cylinder of x.
int open_ball_prefix_gap(double delta) {
    int q = static_cast<int>(std::floor(-std::log2(delta) + 1e-12)) + 1;
    if (q < 1) q = 1;
    while (std::ldexp(1.0, -q) >= delta) ++q;
    while (q >= 2 && std::ldexp(1.0, -(q - 1)) < delta) --q;
    return q;
}

double fit_intercept(const std::vector<double>& x, const std::vector<double>& y,
                     std::vector<double>* residuals, double* rmse) {
    const std::size_t k = x.size();
    if (k == 1) {
        if (residuals) residuals->assign(1, 0.0);
        if (rmse) *rmse = 0.0;
        return y[0];
    }
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
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sq = 0.0;
    if (residuals) residuals->resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        if (residuals) (*residuals)[i] = r;
        sq += r * r;
    }
    if (rmse) *rmse = std::sqrt(sq / k);
    return intercept;
}

void validate_grids(const PressureGrids& grids) {
    std::vector<std::string> errors;
    if (grids.delta_grid.empty()) errors.push_back("delta_grid is empty");
    for (std::size_t i = 0; i < grids.delta_grid.size(); ++i) {
        if (grids.delta_grid[i] <= 0) errors.push_back("delta values must be positive");
        if (i > 0 && grids.delta_grid[i] >= grids.delta_grid[i - 1])
            errors.push_back("delta_grid must be strictly decreasing");
    }
    if (grids.N_grid.empty()) errors.push_back("N_grid is empty");
    for (std::size_t i = 0; i < grids.N_grid.size(); ++i) {
        if (grids.N_grid[i] < 1) errors.push_back("N values must be >= 1");
        if (i > 0 && grids.N_grid[i] <= grids.N_grid[i - 1])
            errors.push_back("N_grid must be strictly increasing");
    }
    if (grids.window < 0) errors.push_back("window must be >= 0");
    if (!errors.empty()) throw ValidationError(std::move(errors));
}

} // namespace

CoverSearch::CoverSearch(const DynMetrics& dm, const Potential& phi, const SampleSet& pool,
                         std::vector<std::size_t> target, CoverParams params, SumFlavor flavor)
    : dm_(&dm), pool_(&pool), target_(std::move(target)), params_(params), flavor_(flavor) {
    const NaifsSystem& sys = dm.system();
    const StateSpace& space = sys.space();
    if (params_.N < 1 || params_.N_max < params_.N)
        throw ValidationError("cover search needs 1 <= N <= N_max");
    if (params_.delta <= 0) throw ValidationError("cover search needs delta > 0");
    for (std::size_t t : target_)
        if (t >= pool.points.size())
            throw ValidationError("cover target index outside the pool");
    if (target_.empty()) return;

    const std::size_t K = pool.points.size();
    symbolic_ = space.kind == SpaceKind::Symbolic && sys.all_shift();

    if (symbolic_) {
        sym_.q = open_ball_prefix_gap(params_.delta);
        sym_.depth_lo = params_.N + sym_.q;
        sym_.depth_hi = params_.N_max + sym_.q;
        if (sym_.depth_hi > space.string_length)
            throw ValidationError("string_length too small for this (delta, N_max): need >= " +
                                  std::to_string(sym_.depth_hi));

        sym_.order.resize(K);
        for (std::size_t i = 0; i < K; ++i) sym_.order[i] = i;
        std::sort(sym_.order.begin(), sym_.order.end(), [&](std::size_t a, std::size_t b) {
            return pool.points[a].sym < pool.points[b].sym;
        });

        std::vector<char> is_target(K, 0);
        for (std::size_t t : target_) is_target[t] = 1;
        sym_.target_prefix.assign(K + 1, 0);
        for (std::size_t pos = 0; pos < K; ++pos)
            sym_.target_prefix[pos + 1] = sym_.target_prefix[pos] + is_target[sym_.order[pos]];

        // S_n per sorted position for every admissible length
        const int n_lo = params_.N, n_hi = params_.N_max;
        sym_.sums.assign(static_cast<std::size_t>(n_hi - n_lo) + 1, std::vector<double>(K, 0.0));
        std::vector<std::vector<double>> profiles(K);
        parallel_for(K, [&](std::size_t pos) {
            profiles[pos] = dm.birkhoff_profile(phi, pool.points[sym_.order[pos]], n_hi).values;
        });
        for (int n = n_lo; n <= n_hi; ++n)
            for (std::size_t pos = 0; pos < K; ++pos)
                sym_.sums[n - n_lo][pos] = profiles[pos][static_cast<std::size_t>(n)];

        if (flavor_ == SumFlavor::BallSup) {
            // the ball sup is constant on each (n+q)-cylinder class
            for (int n = n_lo; n <= n_hi; ++n) {
                auto& row = sym_.sums[n - n_lo];
                const std::size_t plen = static_cast<std::size_t>(n + sym_.q);
                std::size_t lo = 0;
                while (lo < K) {
                    std::size_t hi = lo + 1;
                    while (hi < K &&
                           first_difference(pool.points[sym_.order[hi - 1]].sym,
                                            pool.points[sym_.order[hi]].sym) >= plen)
                        ++hi;
                    double mx = row[lo];
                    for (std::size_t p = lo + 1; p < hi; ++p) mx = std::max(mx, row[p]);
                    for (std::size_t p = lo; p < hi; ++p) row[p] = mx;
                    lo = hi;
                }
            }
        }
        return;
    }

    // generic backend: metric profiles against the pool
    if (K * K > 4'000'000)
        throw ValidationError("pool too large for the generic cover search (" +
                              std::to_string(K) + " points); use a symbolic space or a smaller pool");

    std::vector<std::size_t> target_pos(K, K);
    for (std::size_t idx = 0; idx < target_.size(); ++idx) target_pos[target_[idx]] = idx;

    const int n_lo = params_.N, n_hi = params_.N_max;
    std::vector<std::vector<double>> profiles(K); // birkhoff per pool point
    std::vector<EvalMode> pmodes(K, EvalMode::Exact);
    parallel_for(K, [&](std::size_t i) {
        ProfileValue pr = dm.birkhoff_profile(phi, pool.points[i], n_hi);
        profiles[i] = std::move(pr.values);
        pmodes[i] = pr.mode;
    });
    for (EvalMode m : pmodes) mode_ = worst_mode(mode_, m);

    struct CenterRow {
        std::vector<std::vector<std::uint32_t>> cover;   // per length offset
        std::vector<std::vector<std::uint32_t>> members; // pool members per length
        EvalMode mode = EvalMode::Exact;
    };
    std::vector<CenterRow> rows(K);
    parallel_for(K, [&](std::size_t c) {
        CenterRow& row = rows[c];
        const std::size_t lengths = static_cast<std::size_t>(n_hi - n_lo) + 1;
        row.cover.resize(lengths);
        row.members.resize(lengths);
        for (std::size_t z = 0; z < K; ++z) {
            if (space.distance(pool.points[c], pool.points[z]) >= params_.delta) continue;
            ProfileValue prof = dm.d_n_profile(pool.points[c], pool.points[z], n_hi, params_.delta);
            if (prof.mode == EvalMode::LowerBound) row.mode = EvalMode::LowerBound;
            for (int n = n_lo; n <= n_hi; ++n) {
                // beam lower bounds below delta count as members (cover-safe)
                if (prof.values[static_cast<std::size_t>(n)] < params_.delta) {
                    row.members[n - n_lo].push_back(static_cast<std::uint32_t>(z));
                    if (target_pos[z] < K)
                        row.cover[n - n_lo].push_back(static_cast<std::uint32_t>(target_pos[z]));
                }
            }
        }
    });

    for (std::size_t c = 0; c < K; ++c) {
        mode_ = worst_mode(mode_, rows[c].mode);
        for (int n = n_lo; n <= n_hi; ++n) {
            auto& cover = rows[c].cover[n - n_lo];
            if (cover.empty()) continue;
            GenericCandidate cand;
            cand.center = static_cast<std::uint32_t>(c);
            cand.length = n;
            if (flavor_ == SumFlavor::Center) {
                cand.sum = profiles[c][static_cast<std::size_t>(n)];
            } else {
                double mx = -kInf;
                for (std::uint32_t z : rows[c].members[n - n_lo])
                    mx = std::max(mx, profiles[z][static_cast<std::size_t>(n)]);
                cand.sum = mx;
            }
            cand.cover = std::move(cover);
            cands_.push_back(std::move(cand));
        }
    }
}

CoverSearch::CostResult CoverSearch::symbolic_cost(double alpha, bool fixed_length) const {
    const auto& pts = pool_->points;
    const std::size_t K = sym_.order.size();

    struct Node {
        double cost = 0.0;
        std::size_t size = 0;
    };
    // recursion over prefix classes of the sorted pool
    std::function<Node(std::size_t, std::size_t, int)> solve =
        [&](std::size_t lo, std::size_t hi, int depth) -> Node {
        if (sym_.target_prefix[hi] == sym_.target_prefix[lo]) return {0.0, 0};

        auto ball_at = [&](int d) -> Node {
            const int n = d - sym_.q;
            const auto& row = sym_.sums[n - params_.N];
            double mn = row[lo];
            for (std::size_t p = lo + 1; p < hi; ++p) mn = std::min(mn, row[p]);
            return {std::exp(-alpha * n + mn), 1};
        };

        if (fixed_length) {
            if (depth == sym_.depth_lo) return ball_at(depth);
        } else if (depth == sym_.depth_hi) {
            return ball_at(depth);
        }

        Node best{kInf, 0};
        if (!fixed_length && depth >= sym_.depth_lo) best = ball_at(depth);

        // split the range by the symbol at `depth` and sum the children
        Node sum{0.0, 0};
        std::size_t pos = lo;
        while (pos < hi) {
            const char c = pts[sym_.order[pos]].sym[static_cast<std::size_t>(depth)];
            std::size_t a = pos + 1, b = hi;
            while (a < b) {
                const std::size_t mid = (a + b) / 2;
                if (pts[sym_.order[mid]].sym[static_cast<std::size_t>(depth)] == c)
                    a = mid + 1;
                else
                    b = mid;
            }
            Node child = solve(pos, a, depth + 1);
            sum.cost += child.cost;
            sum.size += child.size;
            pos = a;
        }
        if (sum.cost < best.cost) best = sum;
        return best;
    };

    Node root = solve(0, K, 0);
    return {root.cost, root.size};
}

CoverSearch::CostResult CoverSearch::generic_greedy(double alpha, bool fixed_length) const {
    const std::size_t T = target_.size();
    std::vector<char> covered(T, 0);
    std::size_t remaining = T;

    struct HeapItem {
        double ratio;
        std::size_t idx;
        std::size_t gain;
        bool operator>(const HeapItem& o) const {
            if (ratio != o.ratio) return ratio > o.ratio;
            return idx > o.idx;
        }
    };
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    std::vector<double> costs(cands_.size(), kInf);
    for (std::size_t i = 0; i < cands_.size(); ++i) {
        if (fixed_length && cands_[i].length != params_.N) continue;
        costs[i] = std::exp(-alpha * cands_[i].length + cands_[i].sum);
        heap.push({costs[i] / static_cast<double>(cands_[i].cover.size()), i,
                   cands_[i].cover.size()});
    }

    CostResult out{0.0, 0};
    while (remaining > 0) {
        if (heap.empty()) throw NoCoverError("cover candidates do not cover the target sample");
        HeapItem top = heap.top();
        heap.pop();
        std::size_t gain = 0;
        for (std::uint32_t z : cands_[top.idx].cover)
            if (!covered[z]) ++gain;
        if (gain == 0) continue;
        const double fresh = costs[top.idx] / static_cast<double>(gain);
        if (!heap.empty() && fresh > heap.top().ratio) {
            heap.push({fresh, top.idx, gain});
            continue;
        }
        out.value += costs[top.idx];
        out.cover_size += 1;
        for (std::uint32_t z : cands_[top.idx].cover) {
            if (!covered[z]) {
                covered[z] = 1;
                --remaining;
            }
        }
    }
    return out;
}

CoverSearch::CostResult CoverSearch::cost_variable(double alpha) const {
    if (target_.empty()) return {0.0, 0};
    return symbolic_ ? symbolic_cost(alpha, false) : generic_greedy(alpha, false);
}

CoverSearch::CostResult CoverSearch::cost_fixed(double alpha) const {
    if (target_.empty()) return {0.0, 0};
    return symbolic_ ? symbolic_cost(alpha, true) : generic_greedy(alpha, true);
}

double CoverSearch::cost_weighted(double alpha) const {
    if (target_.empty()) return 0.0;
    if (symbolic_) {
        // nested cylinders form a laminar family: the fractional optimum is
        // attained integrally, so it coincides with the exact cover infimum
        return symbolic_cost(alpha, false).value;
    }
    std::vector<std::vector<std::uint32_t>> cover;
    std::vector<double> cost;
    cover.reserve(cands_.size());
    for (const GenericCandidate& c : cands_) {
        cover.push_back(c.cover);
        cost.push_back(std::exp(-alpha * c.length + c.sum));
    }
    const double lp = covering_lp_optimum(cover, cost, target_.size());
    // a fractional optimum can never exceed the integral greedy cover
    return std::min(lp, generic_greedy(alpha, false).value);
}

CriticalAlphaResult critical_alpha(const std::function<CoverSearch::CostResult(double)>& cost,
                                   const CriticalAlphaOptions& opt) {
    double lo = opt.bracket_lo, hi = opt.bracket_hi;
    if (!(lo < hi)) throw ValidationError("critical_alpha: invalid initial bracket");

    double step = std::max(1.0, hi - lo);
    while (cost(hi).value >= 1.0) {
        hi += step;
        step *= 2;
        if (hi > opt.alpha_limit)
            throw UnboundedPressureError("cover cost never drops below 1 before alpha = " +
                                         std::to_string(opt.alpha_limit));
    }
    step = std::max(1.0, hi - lo);
    while (cost(lo).value <= 1.0) {
        lo -= step;
        step *= 2;
        if (lo < -opt.alpha_limit)
            throw UnboundedPressureError("cover cost never exceeds 1 above alpha = -" +
                                         std::to_string(opt.alpha_limit));
    }

    while (hi - lo > opt.tol) {
        const double mid = 0.5 * (lo + hi);
        if (cost(mid).value >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    CriticalAlphaResult out;
    out.lo = lo;
    out.hi = hi;
    out.alpha = 0.5 * (lo + hi);
    out.cover_size = cost(out.alpha).cover_size;
    return out;
}

namespace {

PressureEstimate empty_estimate(std::size_t pool_size) {
    PressureEstimate est;
    est.empty_target = true;
    est.value = -kInf;
    est.raw_crossing = -kInf;
    est.pool_size = pool_size;
    return est;
}

enum class CellCost { Variable, Fixed, Weighted };

PressureCell solve_cell(const DynMetrics& dm, const Potential& phi, const SampleSet& pool,
                        const std::vector<std::size_t>& target, double delta, int N, int N_max,
                        const CriticalAlphaOptions& opt, SumFlavor flavor, CellCost which) {
    CoverSearch ctx(dm, phi, pool, target, CoverParams{delta, N, N_max}, flavor);
    auto fn = [&](double a) -> CoverSearch::CostResult {
        switch (which) {
            case CellCost::Variable: return ctx.cost_variable(a);
            case CellCost::Fixed: return ctx.cost_fixed(a);
            case CellCost::Weighted: return {ctx.cost_weighted(a), 0};
        }
        return {0.0, 0};
    };
    CriticalAlphaResult r = critical_alpha(fn, opt);
    PressureCell cell;
    cell.delta = delta;
    cell.N = N;
    cell.N_max = N_max;
    cell.alpha_star = r.alpha;
    cell.alpha_lo = r.lo;
    cell.alpha_hi = r.hi;
    cell.cover_size = r.cover_size;
    cell.mode = ctx.mode();
    return cell;
}

// Shared pipeline: an alpha*(delta, N) table plus a 1/N-extrapolated value
// per delta. The raw crossing at finite N carries a log(prefactor)/N excess,
// so the intercept of alpha* against 1/N_max is reported as the value while
// the largest-N bisection bracket is kept as the certified upper bound.
PressureEstimate table_pipeline(const DynMetrics& dm, const Potential& phi, const SampleSet& pool,
                                const std::vector<std::size_t>& target,
                                const PressureGrids& grids, SumFlavor flavor, CellCost which) {
    validate_grids(grids);
    if (target.empty()) return empty_estimate(pool.points.size());

    PressureEstimate est;
    est.pool_size = pool.points.size();
    const std::size_t nd = grids.delta_grid.size();
    const std::size_t nn = grids.N_grid.size();
    est.cells.resize(nd * nn);
    const int window = which == CellCost::Fixed ? 0 : grids.window;

    parallel_for(nd, [&](std::size_t di) {
        for (std::size_t ni = 0; ni < nn; ++ni) {
            const int N = grids.N_grid[ni];
            est.cells[di * nn + ni] =
                solve_cell(dm, phi, pool, target, grids.delta_grid[di], N, N + window,
                           grids.alpha, flavor, which);
        }
    });

    est.per_delta_value.resize(nd);
    for (std::size_t di = 0; di < nd; ++di) {
        std::vector<double> xs(nn), ys(nn);
        for (std::size_t ni = 0; ni < nn; ++ni) {
            xs[ni] = 1.0 / est.cells[di * nn + ni].N_max;
            ys[ni] = est.cells[di * nn + ni].alpha_star;
        }
        double rmse = 0.0;
        est.per_delta_value[di] = fit_intercept(xs, ys, nullptr, &rmse);
        if (di + 1 == nd) est.fit_rmse = rmse;
    }

    const PressureCell& last = est.cells[(nd - 1) * nn + (nn - 1)];
    est.value = est.per_delta_value.back();
    est.raw_crossing = last.alpha_star;
    est.alpha_lo = last.alpha_lo;
    est.alpha_hi = last.alpha_hi;
    for (const PressureCell& c : est.cells) est.mode = worst_mode(est.mode, c.mode);
    est.direction = BoundDirection::UpperBound;
    return est;
}

} // namespace

PressureEstimate pp_pressure(const DynMetrics& dm, const Potential& phi, const SampleSet& pool,
                             const std::vector<std::size_t>& target, const PressureGrids& grids,
                             SumFlavor flavor) {
    return table_pipeline(dm, phi, pool, target, grids, flavor, CellCost::Variable);
}

PressureEstimate weighted_pressure(const DynMetrics& dm, const Potential& phi,
                                   const SampleSet& pool, const std::vector<std::size_t>& target,
                                   const PressureGrids& grids) {
    return table_pipeline(dm, phi, pool, target, grids, SumFlavor::Center, CellCost::Weighted);
}

CapacityEstimate capacity_pressures(const DynMetrics& dm, const Potential& phi,
                                    const SampleSet& pool,
                                    const std::vector<std::size_t>& target,
                                    const PressureGrids& grids) {
    PressureEstimate base =
        table_pipeline(dm, phi, pool, target, grids, SumFlavor::Center, CellCost::Fixed);

    CapacityEstimate out;
    out.lower = base;
    out.upper = base;
    if (base.empty_target) return out;

    // liminf/limsup proxies: min/max of the detrended crossings over the
    // tail half of the N window
    const std::size_t nd = grids.delta_grid.size();
    const std::size_t nn = grids.N_grid.size();
    const std::size_t w = std::min(nn, fit_window(nn));
    std::vector<double> lo_vals(nd), hi_vals(nd);
    for (std::size_t di = 0; di < nd; ++di) {
        std::vector<double> xs(nn), ys(nn), resid;
        for (std::size_t ni = 0; ni < nn; ++ni) {
            xs[ni] = 1.0 / base.cells[di * nn + ni].N_max;
            ys[ni] = base.cells[di * nn + ni].alpha_star;
        }
        const double intercept = fit_intercept(xs, ys, &resid, nullptr);
        double mn = kInf, mx = -kInf;
        for (std::size_t ni = nn - w; ni < nn; ++ni) {
            mn = std::min(mn, intercept + resid[ni]);
            mx = std::max(mx, intercept + resid[ni]);
        }
        lo_vals[di] = mn;
        hi_vals[di] = mx;
    }
    out.lower.per_delta_value = lo_vals;
    out.upper.per_delta_value = hi_vals;
    out.lower.value = lo_vals.back();
    out.upper.value = hi_vals.back();
    return out;
}

SandwichReport sandwich_check_wm(const DynMetrics& dm, const Potential& phi,
                                 const SampleSet& pool, const std::vector<std::size_t>& target,
                                 double alpha, double eps, double delta,
                                 const std::vector<int>& N_list, int window, int n_threshold) {
    if (eps <= 0) throw ValidationError("sandwich check needs eps > 0");
    SandwichReport rep;
    rep.n_threshold = n_threshold;
    for (int N : N_list) {
        SandwichRow row;
        row.N = N;
        if (target.empty()) {
            row.weighted = row.plain = row.enlarged = 0.0;
            row.left_ok = row.right_ok = true;
            rep.rows.push_back(row);
            continue;
        }
        CoverSearch at_delta(dm, phi, pool, target, CoverParams{delta, N, N + window});
        CoverSearch at_6delta(dm, phi, pool, target, CoverParams{6 * delta, N, N + window});
        rep.mode = worst_mode(rep.mode, at_delta.mode());
        rep.mode = worst_mode(rep.mode, at_6delta.mode());
        row.weighted = at_delta.cost_weighted(alpha);
        row.plain = at_delta.cost_variable(alpha).value;
        row.enlarged = at_6delta.cost_variable(alpha + eps).value;
        row.right_ok = row.weighted <= row.plain * (1 + 1e-9) + 1e-12;
        row.left_ok = row.enlarged <= row.weighted * (1 + 1e-9) + 1e-12;
        if (N >= n_threshold && !(row.left_ok && row.right_ok)) rep.violations++;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace naifs
