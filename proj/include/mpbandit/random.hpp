#pragma once

#include <cstdint>
#include <random>

namespace mpbandit {

using Rng = std::mt19937_64;

// Per-component randomness streams within one replica.
enum class Stream : std::uint64_t {
    Environment = 1,
    Learner = 2,
    Scaling = 3,
    Attacker = 4,
    Defender = 5,
    Trace = 6,
    Profile = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replica, Stream stream) {
    return splitmix64(splitmix64(splitmix64(seed) ^ replica) ^ static_cast<std::uint64_t>(stream));
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t replica, Stream stream) {
    return Rng(derive_seed(seed, replica, stream));
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace mpbandit
