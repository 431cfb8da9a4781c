#pragma once

#include <cstdint>

namespace qknap {

// SplitMix64 finalizer. Seed derivation goes through this so that derived
// streams are decorrelated and identical on every platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Derive a child seed from (seed, tag). Chain calls for composite keys.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag + 0x632be59bd9b4e019ull));
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
// std::uniform_real_distribution is implementation-defined, so results
// produced through it would not be reproducible across standard libraries.
template <class Rng>
double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace qknap
