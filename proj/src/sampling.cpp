#include "sampling.hpp"

#include <cmath>

#include "errors.hpp"

namespace naifs {

SampleSet symbolic_cylinder_sample(const NaifsSystem& sys, int depth, std::size_t max_points) {
    const StateSpace& space = sys.space();
    if (space.kind != SpaceKind::Symbolic)
        throw ValidationError("cylinder samples need a symbolic space");
    if (depth < 1 || depth > space.string_length)
        throw ValidationError("cylinder sample depth must lie in [1, string_length]");
    std::size_t total = 1;
    for (int i = 0; i < depth; ++i) {
        total *= static_cast<std::size_t>(space.alphabet);
        if (total > max_points)
            throw ValidationError("cylinder sample would exceed " + std::to_string(max_points) +
                                  " points at depth " + std::to_string(depth));
    }
    SampleSet out;
    out.density = std::ldexp(1.0, -depth);
    out.points.reserve(total);
    std::string word(static_cast<std::size_t>(depth), '0');
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t v = idx;
        for (int i = depth - 1; i >= 0; --i) {
            word[static_cast<std::size_t>(i)] = symbol_char(static_cast<int>(
                v % static_cast<std::size_t>(space.alphabet)));
            v /= static_cast<std::size_t>(space.alphabet);
        }
        out.points.push_back(space.point_from_symbols(word));
    }
    return out;
}

SampleSet grid_sample_1d(const NaifsSystem& sys, std::size_t count) {
    const StateSpace& space = sys.space();
    if (space.kind != SpaceKind::Circle && space.kind != SpaceKind::Interval)
        throw ValidationError("1-D grid samples need the circle or interval space");
    if (count < 2) throw ValidationError("grid sample needs at least 2 points");
    SampleSet out;
    out.points.reserve(count);
    if (space.kind == SpaceKind::Circle) {
        out.density = 1.0 / static_cast<double>(count);
        for (std::size_t i = 0; i < count; ++i)
            out.points.push_back(space.point_from_scalar(static_cast<double>(i) / count));
    } else {
        out.density = 1.0 / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i)
            out.points.push_back(space.point_from_scalar(static_cast<double>(i) / (count - 1)));
    }
    return out;
}

SampleSet grid_sample_torus(const NaifsSystem& sys, std::size_t per_dim) {
    const StateSpace& space = sys.space();
    if (space.kind != SpaceKind::Torus) throw ValidationError("torus grid needs the torus space");
    if (per_dim < 2) throw ValidationError("grid sample needs at least 2 points per dimension");
    std::size_t total = 1;
    for (int i = 0; i < space.dim; ++i) total *= per_dim;
    if (total > (1u << 21)) throw ValidationError("torus grid too large");
    SampleSet out;
    out.density = 1.0 / static_cast<double>(per_dim - 1);
    out.points.reserve(total);
    std::vector<double> coords(static_cast<std::size_t>(space.dim), 0.0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t v = idx;
        for (int i = space.dim - 1; i >= 0; --i) {
            coords[static_cast<std::size_t>(i)] =
                static_cast<double>(v % per_dim) / static_cast<double>(per_dim - 1);
            v /= per_dim;
        }
        out.points.push_back(space.point_from_coords(coords));
    }
    return out;
}

std::vector<std::size_t> cylinder_target(const SampleSet& pool, const std::string& prefix) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pool.points.size(); ++i)
        if (pool.points[i].sym.compare(0, prefix.size(), prefix) == 0) out.push_back(i);
    return out;
}

std::vector<std::size_t> range_target(const SampleSet& pool, double lo, double hi) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pool.points.size(); ++i)
        if (pool.points[i].x[0] >= lo && pool.points[i].x[0] < hi) out.push_back(i);
    return out;
}

std::vector<std::size_t> whole_target(const SampleSet& pool) {
    std::vector<std::size_t> out(pool.points.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

} // namespace naifs
