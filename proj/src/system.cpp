#include "system.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace naifs {

NaifsSystem::NaifsSystem(StateSpace space, std::vector<GeneratorFamily> preamble,
                         std::vector<GeneratorFamily> period)
    : space_(space), preamble_(std::move(preamble)), period_(std::move(period)) {
    std::vector<std::string> errors;
    if (period_.empty()) errors.push_back("schedule period must be nonempty");
    auto check_family = [&](const GeneratorFamily& fam, const char* where, std::size_t idx) {
        if (fam.empty())
            errors.push_back(std::string(where) + " family " + std::to_string(idx) + " is empty");
        for (const MapSpec& m : fam) m.validate(space_, errors);
    };
    for (std::size_t i = 0; i < preamble_.size(); ++i) check_family(preamble_[i], "preamble", i);
    for (std::size_t i = 0; i < period_.size(); ++i) check_family(period_[i], "period", i);
    if (space_.kind == SpaceKind::Symbolic && space_.string_length < 2)
        errors.push_back("symbolic space needs string_length >= 2");
    if (!errors.empty()) throw ValidationError(std::move(errors));

    for (const auto& fam : preamble_) max_family_size_ = std::max(max_family_size_, fam.size());
    for (const auto& fam : period_) max_family_size_ = std::max(max_family_size_, fam.size());
    auto scan = [&](const GeneratorFamily& fam) {
        for (const MapSpec& m : fam) {
            if (m.kind != MapKind::Shift) all_shift_ = false;
            max_lipschitz_ = std::max(max_lipschitz_, m.effective_lipschitz(space_));
        }
    };
    for (const auto& fam : preamble_) scan(fam);
    for (const auto& fam : period_) scan(fam);
}

const GeneratorFamily& NaifsSystem::family_at(std::size_t j) const {
    if (j < 1) throw RuntimeModuleError("family_at: time index must be >= 1");
    if (j <= preamble_.size()) return preamble_[j - 1];
    return period_[(j - 1 - preamble_.size()) % period_.size()];
}

std::uint64_t NaifsSystem::word_count(std::size_t start, int n, std::uint64_t cap) const {
    std::uint64_t total = 1;
    for (int t = 0; t < n; ++t) {
        total *= family_at(start + static_cast<std::size_t>(t)).size();
        if (total >= cap) return cap;
    }
    return total;
}

Point NaifsSystem::apply_map(std::size_t j, std::size_t index, const Point& p) const {
    const GeneratorFamily& fam = family_at(j);
    if (index >= fam.size())
        throw RuntimeModuleError("apply_map: generator index " + std::to_string(index) +
                                 " invalid at time " + std::to_string(j) +
                                 " (family size " + std::to_string(fam.size()) + ")");
    return fam[index].apply(space_, p);
}

std::vector<Point> NaifsSystem::orbit(const Point& x, const Word& w) const {
    std::vector<Point> out;
    out.reserve(w.length() + 1);
    out.push_back(x);
    for (std::size_t t = 0; t < w.length(); ++t)
        out.push_back(apply_map(w.start + t, w.indices[t], out.back()));
    return out;
}

Point NaifsSystem::random_point(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t counter) const {
    Point p;
    switch (space_.kind) {
        case SpaceKind::Circle:
        case SpaceKind::Interval:
            p.x.push_back(uniform01(seed, stream, counter));
            break;
        case SpaceKind::Torus:
            for (int i = 0; i < space_.dim; ++i)
                p.x.push_back(uniform01(seed, stream, counter * 64 + static_cast<std::uint64_t>(i)));
            break;
        case SpaceKind::Symbolic: {
            p.sym.resize(space_.string_length);
            for (int i = 0; i < space_.string_length; ++i)
                p.sym[i] = symbol_char(static_cast<int>(uniform_below(
                    seed, stream, counter * 1024 + static_cast<std::uint64_t>(i),
                    static_cast<std::uint64_t>(space_.alphabet))));
            break;
        }
    }
    return p;
}

void NaifsSystem::validate(std::uint64_t seed) const {
    std::vector<std::string> errors;
    const std::size_t classes = schedule_classes();
    const int kPairs = 48;
    for (std::size_t j = 1; j <= classes; ++j) {
        const GeneratorFamily& fam = family_at(j);
        for (std::size_t i = 0; i < fam.size(); ++i) {
            const MapSpec& m = fam[i];
            const double lip = m.effective_lipschitz(space_);
            for (int k = 0; k < kPairs; ++k) {
                const Point a = random_point(seed, j * 131 + i, 2 * k);
                const Point b = random_point(seed, j * 131 + i, 2 * k + 1);
                const Point fa = m.apply(space_, a);
                const Point fb = m.apply(space_, b);
                if (!space_.contains(fa) || !space_.contains(fb)) {
                    errors.push_back("map '" + m.name + "' leaves the state space");
                    break;
                }
                const double d0 = space_.distance(a, b);
                const double d1 = space_.distance(fa, fb);
                // piecewise-linear jumps are exempt across discontinuities:
                // the declared constant only bounds within-branch expansion,
                // so skip pairs that straddle a breakpoint
                if (m.kind == MapKind::PiecewiseLinear) {
                    bool straddles = false;
                    for (std::size_t q = 1; q + 1 < m.breakpoints.size(); ++q) {
                        const double bp = m.breakpoints[q];
                        if ((a.x[0] - bp) * (b.x[0] - bp) < 0) straddles = true;
                    }
                    if (straddles) continue;
                }
                if (d1 > lip * d0 * (1.0 + 1e-6) + 1e-12) {
                    errors.push_back("map '" + m.name + "': sampled expansion " +
                                     std::to_string(d1 / std::max(d0, 1e-300)) +
                                     " exceeds declared lipschitz " + std::to_string(lip));
                    break;
                }
            }
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
}

} // namespace naifs
