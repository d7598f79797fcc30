#include "maps.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace naifs {

namespace {

double frac(double v) {
    double f = v - std::floor(v);
    if (f >= 1.0) f = 0.0; // guard against floor rounding at negative epsilons
    return f;
}

double clamp01(double v) {
    return std::min(1.0, std::max(0.0, v));
}

// Piece index for x: right-limit branch at breakpoints, last piece at x = 1.
std::size_t pwl_piece(const std::vector<double>& bp, double x) {
    // bp[j] <= x < bp[j+1]
    auto it = std::upper_bound(bp.begin(), bp.end(), x);
    if (it == bp.begin()) return 0;
    std::size_t j = static_cast<std::size_t>(it - bp.begin()) - 1;
    if (j >= bp.size() - 1) j = bp.size() - 2; // x == 1
    return j;
}

} // namespace

double MapSpec::analytic_lipschitz(const StateSpace& space) const {
    (void)space;
    switch (kind) {
        case MapKind::AffineMod1:
            return static_cast<double>(std::llabs(a));
        case MapKind::PiecewiseLinear: {
            double m = 0.0;
            for (double s : slopes) m = std::max(m, std::fabs(s));
            return m;
        }
        case MapKind::AffineContraction: {
            double norm = 0.0;
            for (const auto& row : matrix) {
                double r = 0.0;
                for (double v : row) r += std::fabs(v);
                norm = std::max(norm, r);
            }
            return norm;
        }
        case MapKind::Shift:
            return 2.0;
    }
    return 1.0;
}

Point MapSpec::apply(const StateSpace& space, const Point& p) const {
    Point out;
    switch (kind) {
        case MapKind::AffineMod1: {
            out.x.push_back(frac(static_cast<double>(a) * p.x[0] + b));
            return out;
        }
        case MapKind::PiecewiseLinear: {
            const std::size_t j = pwl_piece(breakpoints, p.x[0]);
            out.x.push_back(clamp01(offsets[j] + slopes[j] * p.x[0]));
            return out;
        }
        case MapKind::AffineContraction: {
            const std::size_t d = matrix.size();
            out.x.resize(d);
            for (std::size_t i = 0; i < d; ++i) {
                double v = offset[i];
                for (std::size_t k = 0; k < d; ++k) v += matrix[i][k] * p.x[k];
                out.x[i] = clamp01(v);
            }
            return out;
        }
        case MapKind::Shift: {
            out.sym.assign(p.sym.begin() + 1, p.sym.end());
            out.sym.push_back(space.fill);
            return out;
        }
    }
    return out;
}

void MapSpec::validate(const StateSpace& space, std::vector<std::string>& errors) const {
    const std::string tag = "map '" + name + "': ";
    switch (kind) {
        case MapKind::AffineMod1: {
            if (space.kind != SpaceKind::Circle)
                errors.push_back(tag + "affine-mod-1 requires the circle space");
            if (std::llabs(a) < 1) errors.push_back(tag + "|a| must be >= 1");
            break;
        }
        case MapKind::PiecewiseLinear: {
            if (space.kind != SpaceKind::Interval && space.kind != SpaceKind::Circle)
                errors.push_back(tag + "piecewise-linear requires interval or circle space");
            if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
                errors.push_back(tag + "breakpoints must start at 0 and end at 1");
            if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
                std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end())
                errors.push_back(tag + "breakpoints must be strictly increasing");
            if (slopes.size() + 1 != breakpoints.size())
                errors.push_back(tag + "need one slope per piece (|breakpoints| - 1)");
            if (offsets.size() != slopes.size())
                errors.push_back(tag + "need one offset per piece");
            if (offsets.size() == slopes.size() && slopes.size() + 1 == breakpoints.size()) {
                // linear pieces attain extremes at interval endpoints
                const double tol = 1e-9;
                for (std::size_t j = 0; j < slopes.size(); ++j) {
                    for (double xend : {breakpoints[j], breakpoints[j + 1]}) {
                        const double v = offsets[j] + slopes[j] * xend;
                        if (v < -tol || v > 1.0 + tol) {
                            errors.push_back(tag + "image leaves [0,1] on piece " + std::to_string(j));
                            break;
                        }
                    }
                }
            }
            break;
        }
        case MapKind::AffineContraction: {
            if (space.kind != SpaceKind::Torus)
                errors.push_back(tag + "affine-contraction requires the torus space");
            const std::size_t d = static_cast<std::size_t>(space.dim);
            if (matrix.size() != d) {
                errors.push_back(tag + "matrix must be dim x dim");
                break;
            }
            for (const auto& row : matrix)
                if (row.size() != d) {
                    errors.push_back(tag + "matrix must be dim x dim");
                    return;
                }
            if (offset.size() != d) {
                errors.push_back(tag + "offset must have dim entries");
                break;
            }
            if (analytic_lipschitz(space) >= 1.0)
                errors.push_back(tag + "sup operator norm must be < 1");
            // image of the cube must stay inside the cube
            const double tol = 1e-9;
            for (std::size_t i = 0; i < d; ++i) {
                double lo = offset[i], hi = offset[i];
                for (std::size_t k = 0; k < d; ++k) {
                    lo += std::min(0.0, matrix[i][k]);
                    hi += std::max(0.0, matrix[i][k]);
                }
                if (lo < -tol || hi > 1.0 + tol)
                    errors.push_back(tag + "image leaves [0,1]^dim in coordinate " + std::to_string(i));
            }
            break;
        }
        case MapKind::Shift: {
            if (space.kind != SpaceKind::Symbolic)
                errors.push_back(tag + "shift requires a symbolic space");
            break;
        }
    }
    if (lipschitz > 0 && lipschitz < analytic_lipschitz(space) * (1.0 - 1e-9))
        errors.push_back(tag + "declared lipschitz below the analytic constant");
}

} // namespace naifs
