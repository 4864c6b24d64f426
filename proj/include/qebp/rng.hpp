#ifndef QEBP_RNG_HPP
#define QEBP_RNG_HPP

#include <cstdint>
#include <random>

namespace qebp {

// splitmix64, used for seed derivation so that every (master, stream, index)
// combination gets a statistically independent mt19937_64 stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

// Uniform double in [0,1) with 53 random bits. mt19937_64 output is fully
// specified by the standard, so results are reproducible across platforms,
// unlike std::uniform_real_distribution.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qebp

#endif
