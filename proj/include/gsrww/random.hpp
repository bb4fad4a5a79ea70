#pragma once

#include <cstdint>
#include <random>

namespace gsrww {

using Engine = std::mt19937_64;

/// splitmix64 finaliser; decorrelates consecutive seeds.
constexpr std::uint64_t mix_seed(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for task `index` of a job seeded with `seed`. Independent of how
/// tasks are scheduled across threads.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix_seed(mix_seed(seed) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(std::uint64_t seed) {
    return Engine(mix_seed(seed));
}

}  // namespace gsrww
