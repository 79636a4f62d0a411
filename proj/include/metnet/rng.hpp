#pragma once

#include <cstdint>
#include <random>

namespace metnet {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of replicate `index` under master seed `master`: the (index+1)-th
/// output of a SplitMix64 counter started at `master`.
constexpr std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master + index * 0x9E3779B97F4A7C15ull);
}

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). Rejection sampling on raw engine output, so
/// results do not depend on the standard library's distribution implementation.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= limit) return r % bound;
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace metnet
