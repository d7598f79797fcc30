#include "potential.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace naifs {

namespace {

int space_dim(const StateSpace& space) {
    return space.kind == SpaceKind::Torus ? space.dim : 1;
}

} // namespace

double Potential::eval(const StateSpace& space, const Point& p) const {
    switch (kind) {
        case PotentialKind::Constant:
            return value;
        case PotentialKind::Affine: {
            double v = offset;
            for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * p.x[i];
            return v;
        }
        case PotentialKind::FirstSymbol:
            return table[static_cast<std::size_t>(symbol_value(p.sym[0]))];
        case PotentialKind::Grid: {
            // multilinear interpolation over a regular node grid on [0,1]^D
            const int d = space_dim(space);
            double acc = 0.0;
            const int corners = 1 << d;
            std::vector<int> lo(d);
            std::vector<double> frac(d);
            for (int i = 0; i < d; ++i) {
                const int nodes = grid_shape[i];
                double t = std::clamp(p.x[i], 0.0, 1.0) * (nodes - 1);
                int cell = std::min(static_cast<int>(t), nodes - 2);
                lo[i] = cell;
                frac[i] = t - cell;
            }
            for (int c = 0; c < corners; ++c) {
                double w = 1.0;
                std::size_t flat = 0;
                std::size_t stride = 1;
                for (int i = d - 1; i >= 0; --i) {
                    const int up = (c >> i) & 1;
                    w *= up ? frac[i] : 1.0 - frac[i];
                    flat += stride * static_cast<std::size_t>(lo[i] + up);
                    stride *= static_cast<std::size_t>(grid_shape[i]);
                }
                acc += w * grid_values[flat];
            }
            return acc;
        }
    }
    return 0.0;
}

double Potential::sup(const StateSpace& space) const {
    switch (kind) {
        case PotentialKind::Constant:
            return value;
        case PotentialKind::Affine: {
            double v = offset;
            for (double w : weights) v += std::max(0.0, w);
            return v;
        }
        case PotentialKind::FirstSymbol: {
            double m = table[0];
            for (int i = 0; i < space.alphabet; ++i) m = std::max(m, table[i]);
            return m;
        }
        case PotentialKind::Grid:
            return *std::max_element(grid_values.begin(), grid_values.end());
    }
    return 0.0;
}

double Potential::inf(const StateSpace& space) const {
    switch (kind) {
        case PotentialKind::Constant:
            return value;
        case PotentialKind::Affine: {
            double v = offset;
            for (double w : weights) v += std::min(0.0, w);
            return v;
        }
        case PotentialKind::FirstSymbol: {
            double m = table[0];
            for (int i = 0; i < space.alphabet; ++i) m = std::min(m, table[i]);
            return m;
        }
        case PotentialKind::Grid:
            return *std::min_element(grid_values.begin(), grid_values.end());
    }
    return 0.0;
}

double Potential::modulus(const StateSpace& space, double delta) const {
    if (delta <= 0) return 0.0;
    const double range = sup(space) - inf(space);
    switch (kind) {
        case PotentialKind::Constant:
            return 0.0;
        case PotentialKind::Affine: {
            double l1 = 0.0;
            for (double w : weights) l1 += std::fabs(w);
            return std::min(l1 * delta, range);
        }
        case PotentialKind::FirstSymbol:
            // d(x,y) < 1 forces equal first symbols
            return delta <= 1.0 ? 0.0 : range;
        case PotentialKind::Grid: {
            // sup-metric Lipschitz constant of the interpolant: sum over
            // dimensions of the steepest per-cell node difference
            const int d = space_dim(space);
            double lsum = 0.0;
            std::size_t stride = 1;
            std::vector<std::size_t> strides(d);
            for (int i = d - 1; i >= 0; --i) {
                strides[i] = stride;
                stride *= static_cast<std::size_t>(grid_shape[i]);
            }
            for (int i = 0; i < d; ++i) {
                const double h = 1.0 / (grid_shape[i] - 1);
                double steep = 0.0;
                for (std::size_t flat = 0; flat < grid_values.size(); ++flat) {
                    const std::size_t idx = (flat / strides[i]) % grid_shape[i];
                    if (idx + 1 < static_cast<std::size_t>(grid_shape[i]))
                        steep = std::max(steep,
                                         std::fabs(grid_values[flat + strides[i]] - grid_values[flat]) / h);
                }
                lsum += steep;
            }
            return std::min(lsum * delta, range);
        }
    }
    return range;
}

void Potential::validate(const StateSpace& space, std::vector<std::string>& errors) const {
    switch (kind) {
        case PotentialKind::Constant:
            break;
        case PotentialKind::Affine: {
            if (space.kind == SpaceKind::Circle)
                errors.push_back("potential: affine is discontinuous on the circle; "
                                 "use a grid potential with matching endpoints");
            if (space.kind == SpaceKind::Symbolic)
                errors.push_back("potential: affine needs numeric coordinates");
            const std::size_t d = static_cast<std::size_t>(space_dim(space));
            if (weights.size() != d)
                errors.push_back("potential: need one weight per coordinate");
            break;
        }
        case PotentialKind::FirstSymbol: {
            if (space.kind != SpaceKind::Symbolic)
                errors.push_back("potential: first-symbol requires a symbolic space");
            else if (table.size() != static_cast<std::size_t>(space.alphabet))
                errors.push_back("potential: first-symbol table needs one value per symbol");
            break;
        }
        case PotentialKind::Grid: {
            if (space.kind == SpaceKind::Symbolic) {
                errors.push_back("potential: grid requires numeric coordinates");
                break;
            }
            const int d = space_dim(space);
            if (static_cast<int>(grid_shape.size()) != d) {
                errors.push_back("potential: grid_shape must have one entry per dimension");
                break;
            }
            std::size_t total = 1;
            for (int n : grid_shape) {
                if (n < 2) {
                    errors.push_back("potential: grid needs >= 2 nodes per dimension");
                    return;
                }
                total *= static_cast<std::size_t>(n);
            }
            if (grid_values.size() != total) {
                errors.push_back("potential: grid_values size does not match grid_shape");
                break;
            }
            if (space.kind == SpaceKind::Circle &&
                std::fabs(grid_values.front() - grid_values.back()) > 1e-12)
                errors.push_back("potential: grid on the circle must match at 0 and 1");
            break;
        }
    }
}

void validate_potential(const NaifsSystem& sys, const Potential& phi,
                        std::vector<std::string>& errors, std::uint64_t seed) {
    phi.validate(sys.space(), errors);
    if (!errors.empty()) return;

    // modulus nondecreasing in delta, checked on a decreasing grid
    double prev = -1.0;
    for (double delta : {1.0, 0.5, 0.25, 0.125, 1.0 / 16, 1.0 / 64, 1.0 / 256}) {
        const double m = phi.modulus(sys.space(), delta);
        if (prev >= 0 && m > prev + 1e-12) {
            errors.push_back("potential: modulus not nondecreasing in delta");
            return;
        }
        prev = m;
    }
    if (phi.modulus(sys.space(), 1e-9) > 1e-6 + 1e-12)
        errors.push_back("potential: modulus does not vanish as delta -> 0");

    // sampled-pair bound
    for (int k = 0; k < 200; ++k) {
        const Point a = sys.random_point(seed, 977, 2 * k);
        const Point b = sys.random_point(seed, 977, 2 * k + 1);
        const double d = sys.space().distance(a, b);
        if (d <= 0) continue;
        const double diff = std::fabs(phi.eval(sys.space(), a) - phi.eval(sys.space(), b));
        if (diff > phi.modulus(sys.space(), d * (1.0 + 1e-9)) + 1e-9) {
            errors.push_back("potential: sampled pair exceeds the declared modulus");
            return;
        }
    }
}

} // namespace naifs
