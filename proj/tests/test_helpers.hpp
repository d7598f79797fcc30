#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "dynmetrics.hpp"
#include "potential.hpp"
#include "system.hpp"

namespace naifs::testing {

inline MapSpec affine_mod1(long long a, double b = 0.0) {
    MapSpec m;
    m.kind = MapKind::AffineMod1;
    m.name = "E" + std::to_string(a);
    m.a = a;
    m.b = b;
    return m;
}

inline MapSpec shift_map() {
    MapSpec m;
    m.kind = MapKind::Shift;
    m.name = "shift";
    return m;
}

// Doubling mod 1 expressed as a (discontinuous) piecewise-linear interval map.
inline MapSpec doubling_interval() {
    MapSpec m;
    m.kind = MapKind::PiecewiseLinear;
    m.name = "doubling";
    m.breakpoints = {0.0, 0.5, 1.0};
    m.slopes = {2.0, 2.0};
    m.offsets = {0.0, -1.0};
    return m;
}

inline StateSpace circle_space() {
    StateSpace s;
    s.kind = SpaceKind::Circle;
    return s;
}

inline StateSpace interval_space() {
    StateSpace s;
    s.kind = SpaceKind::Interval;
    return s;
}

inline StateSpace symbolic_space(int alphabet, int length) {
    StateSpace s;
    s.kind = SpaceKind::Symbolic;
    s.alphabet = alphabet;
    s.string_length = length;
    return s;
}

// Constant schedule with one family of circle maps x -> a x (mod 1).
inline NaifsSystem circle_system(std::vector<long long> slopes) {
    GeneratorFamily fam;
    for (long long a : slopes) fam.push_back(affine_mod1(a));
    return NaifsSystem(circle_space(), {}, {fam});
}

// Alternating singleton families ({E_a}, {E_b}, {E_a}, ...).
inline NaifsSystem alternating_circle_system(long long a, long long b) {
    return NaifsSystem(circle_space(), {}, {{affine_mod1(a)}, {affine_mod1(b)}});
}

inline NaifsSystem two_shift(int length = 20) {
    return NaifsSystem(symbolic_space(2, length), {}, {{shift_map()}});
}

inline NaifsSystem doubling_on_interval() {
    return NaifsSystem(interval_space(), {}, {{doubling_interval()}});
}

inline Point pt(const NaifsSystem& sys, double v) { return sys.space().point_from_scalar(v); }
inline Point spt(const NaifsSystem& sys, const std::string& s) {
    return sys.space().point_from_symbols(s);
}

// ---- naive oracles: direct word enumeration, no pruning, no fast paths ----

inline void enumerate_words(const NaifsSystem& sys, std::size_t start, int n,
                            std::vector<std::size_t>& word,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (static_cast<int>(word.size()) == n) {
        fn(word);
        return;
    }
    const std::size_t j = start + word.size();
    for (std::size_t i = 0; i < sys.family_at(j).size(); ++i) {
        word.push_back(i);
        enumerate_words(sys, start, n, word, fn);
        word.pop_back();
    }
}

inline double naive_d_n(const NaifsSystem& sys, std::size_t start, const Point& x, const Point& y,
                        int n) {
    double best = 0.0;
    std::vector<std::size_t> word;
    enumerate_words(sys, start, n, word, [&](const std::vector<std::size_t>& w) {
        Point a = x, b = y;
        best = std::max(best, sys.space().distance(a, b));
        for (int t = 0; t < n; ++t) {
            a = sys.apply_map(start + t, w[t], a);
            b = sys.apply_map(start + t, w[t], b);
            best = std::max(best, sys.space().distance(a, b));
        }
    });
    return best;
}

inline double naive_d_n_star(const NaifsSystem& sys, const Point& x, const Point& y, int n) {
    double best = 0.0;
    for (std::size_t start = 1; start <= sys.schedule_classes(); ++start)
        best = std::max(best, naive_d_n(sys, start, x, y, n));
    return best;
}

inline double naive_birkhoff_max(const NaifsSystem& sys, const Potential& phi, const Point& x,
                                 int n) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> word;
    enumerate_words(sys, 1, n, word, [&](const std::vector<std::size_t>& w) {
        Point p = x;
        double sum = 0.0;
        for (int t = 0; t < n; ++t) {
            sum += phi.eval(sys.space(), p);
            p = sys.apply_map(1 + t, w[t], p);
        }
        best = std::max(best, sum);
    });
    return best;
}

} // namespace naifs::testing
