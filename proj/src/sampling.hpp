#pragma once

#include <string>
#include <vector>

#include "counting.hpp"
#include "system.hpp"

namespace naifs {

// One representative per depth-`depth` cylinder, padded with the fill symbol,
// in lexicographic order. Throws when alphabet^depth exceeds max_points.
SampleSet symbolic_cylinder_sample(const NaifsSystem& sys, int depth,
                                   std::size_t max_points = 1u << 21);

// Uniform grid on the circle or interval.
SampleSet grid_sample_1d(const NaifsSystem& sys, std::size_t count);

// Uniform per-dimension grid on the torus.
SampleSet grid_sample_torus(const NaifsSystem& sys, std::size_t per_dim);

// Indices of pool members whose symbols start with `prefix`.
std::vector<std::size_t> cylinder_target(const SampleSet& pool, const std::string& prefix);

// Indices of pool members inside [lo, hi) (first coordinate).
std::vector<std::size_t> range_target(const SampleSet& pool, double lo, double hi);

std::vector<std::size_t> whole_target(const SampleSet& pool);

} // namespace naifs
