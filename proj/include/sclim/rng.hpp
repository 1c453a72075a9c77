#pragma once

#include <cstdint>
#include <random>

namespace sclim {

/// \brief SplitMix64 finalizer, used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// \brief Order-sensitive hash of a parent seed and an index.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return mix64(parent ^ mix64(index + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

/// Uniform double in [0,1) from the top 53 bits; portable across standard libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Bernoulli threshold on the raw 64-bit output: P(rng() < t) == rate (to 2^-64).
inline std::uint64_t bernoulli_threshold(double rate) {
    if (rate <= 0.0) return 0;
    if (rate >= 1.0) return ~std::uint64_t{0};
    return static_cast<std::uint64_t>(rate * 0x1.0p64);
}

}  // namespace sclim
