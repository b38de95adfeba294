#pragma once

#include <cmath>
#include <cstdint>

#include "ginstat/scalar.hpp"

namespace ginstat {

/// 64-bit avalanche permutation (splitmix64 finalizer). Bijective.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic per-sample seed stream: distinct indices give distinct
/// streams, and the output depends on every bit of both arguments.
inline uint64_t derive_sample_seed(uint64_t master_seed, uint64_t sample_index) {
    return mix64(master_seed ^ mix64(sample_index + 0x632BE59BD9B4E019ULL));
}

/// Counter-based uniform in (0,1): value depends only on (seed, counter).
inline double counter_uniform(uint64_t seed, uint64_t counter) {
    uint64_t bits = mix64(seed ^ mix64(counter + 0xD1B54A32D192ED03ULL));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Pair of independent standard normals from two counter slots (Box-Muller).
inline void counter_gaussian_pair(uint64_t seed, uint64_t counter, double& g0, double& g1) {
    double u1 = counter_uniform(seed, 2 * counter);
    double u2 = counter_uniform(seed, 2 * counter + 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    g0 = r * std::cos(2.0 * kPi * u2);
    g1 = r * std::sin(2.0 * kPi * u2);
}

}  // namespace ginstat
