#pragma once

#include <cstdint>

namespace naifs {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so parallel evaluation order cannot change
// results. splitmix64 finalizer applied twice over the mixed key.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t k = splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return splitmix64(k + 0xbf58476d1ce4e5b9ULL * counter);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(counter_rng(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) without modulo bias worth worrying about at
// the n values used here (n is tiny: alphabet sizes, family sizes).
inline std::uint64_t uniform_below(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                                   std::uint64_t n) {
    return counter_rng(seed, stream, counter) % n;
}

} // namespace naifs
