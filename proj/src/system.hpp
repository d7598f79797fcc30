#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maps.hpp"
#include "space.hpp"

namespace naifs {

// A finite choice of one generator index per time step, valid from `start`.
// Entry t selects a map in the family active at time start + t.
struct Word {
    std::size_t start = 1;
    std::vector<std::size_t> indices;
    std::size_t length() const { return indices.size(); }
};

// Time-varying IFS with an eventually periodic schedule: the family active
// at time j is preamble[j-1] for j <= |preamble| and repeats through
// `period` afterwards. Immutable after construction; all operations are
// pure functions of their inputs.
class NaifsSystem {
public:
    NaifsSystem(StateSpace space, std::vector<GeneratorFamily> preamble,
                std::vector<GeneratorFamily> period);

    const StateSpace& space() const { return space_; }
    const std::vector<GeneratorFamily>& preamble() const { return preamble_; }
    const std::vector<GeneratorFamily>& period() const { return period_; }

    // 1-based time index.
    const GeneratorFamily& family_at(std::size_t j) const;

    // Distinct schedule classes: every start time i is equivalent to some
    // i' in [1, |preamble| + |period|] beyond which schedules coincide.
    std::size_t schedule_classes() const { return preamble_.size() + period_.size(); }

    std::size_t max_family_size() const { return max_family_size_; }
    bool all_shift() const { return all_shift_; }
    double max_lipschitz() const { return max_lipschitz_; }

    // Number of words in I^{start, n}, saturated at `cap`.
    std::uint64_t word_count(std::size_t start, int n, std::uint64_t cap) const;

    Point apply_map(std::size_t j, std::size_t index, const Point& p) const;

    // Orbit points [x, f_w^{m,1}(x), ..., f_w^{m,|w|}(x)].
    std::vector<Point> orbit(const Point& x, const Word& w) const;

    // Samples map/point pairs and verifies declared Lipschitz constants and
    // that maps stay inside the space. Throws ValidationError.
    void validate(std::uint64_t seed = 0) const;

    Point random_point(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) const;

private:
    StateSpace space_;
    std::vector<GeneratorFamily> preamble_;
    std::vector<GeneratorFamily> period_;
    std::size_t max_family_size_ = 1;
    bool all_shift_ = true;
    double max_lipschitz_ = 0.0;
};

} // namespace naifs
