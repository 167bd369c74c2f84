// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_UTIL_RNG_HPP
#define STREAMREG_UTIL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace streamreg::util {

/// splitmix64 step; used to derive independent sub-seeds from a master
/// seed. The mt19937_64 engine itself has a standard-fixed output
/// sequence, so everything downstream is reproducible across platforms.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i <= index % 8; ++i) out = splitmix64(s);
    s = master ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return out ^ splitmix64(s);
}

/// Deterministic double-precision random source. Avoids the standard
/// library distributions on purpose: their outputs are not pinned by the
/// standard, while the raw engine sequence is.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in the open interval (0, 1).
    double uniform01() {
        const std::uint64_t bits = engine_() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via the Box-Muller transform (two uniforms per
    /// draw, no caching, to keep the consumption pattern simple).
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace streamreg::util

#endif  // STREAMREG_UTIL_RNG_HPP
