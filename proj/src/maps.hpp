#pragma once

#include <string>
#include <vector>

#include "space.hpp"

namespace naifs {

enum class MapKind { AffineMod1, PiecewiseLinear, AffineContraction, Shift };

// One generator map. Parameter fields are used according to kind:
//   affine-mod-1        x -> (a*x + b) mod 1 on the circle, a integer, |a| >= 1
//   piecewise-linear    x -> offsets[j] + slopes[j]*x on [breakpoints[j], breakpoints[j+1]);
//                       breakpoints take the right-limit branch, x = 1 uses the last piece
//   affine-contraction  x -> A*x + b on [0,1]^D, sup operator norm of A < 1
//   shift               drops the first symbol and appends the space fill symbol
//
// `lipschitz` is the declared constant (defaults to the analytic one); it is
// only used for search pruning and is validated against sampled pairs.
struct MapSpec {
    MapKind kind = MapKind::Shift;
    std::string name;

    long long a = 1;
    double b = 0.0;

    std::vector<double> breakpoints;
    std::vector<double> slopes;
    std::vector<double> offsets;

    std::vector<std::vector<double>> matrix;
    std::vector<double> offset;

    double lipschitz = 0.0; // 0 means "use the analytic default"

    double analytic_lipschitz(const StateSpace& space) const;
    double effective_lipschitz(const StateSpace& space) const {
        return lipschitz > 0 ? lipschitz : analytic_lipschitz(space);
    }

    Point apply(const StateSpace& space, const Point& p) const;

    // Appends human-readable problems to `errors` (kind/space mismatch,
    // range escapes, non-contraction, bad breakpoints, ...).
    void validate(const StateSpace& space, std::vector<std::string>& errors) const;
};

using GeneratorFamily = std::vector<MapSpec>;

} // namespace naifs
