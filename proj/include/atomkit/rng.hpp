#pragma once

#include <cstdint>
#include <random>

namespace atomkit {

using Rng = std::mt19937_64;

/// Uniform draw from [0, n). Rejection sampling keeps results identical across
/// standard libraries, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(Rng& g, std::uint64_t n)
{
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t x = g();
    while (x < threshold)
        x = g();
    return x % n;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& g) { return double(g() >> 11) * 0x1.0p-53; }

} // namespace atomkit
