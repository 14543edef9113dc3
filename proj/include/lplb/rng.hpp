#pragma once

#include <cstdint>
#include <random>

namespace lplb::rng {

// splitmix64; used only to decorrelate seeds of derived streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic per-task stream: results do not depend on the order in
// which streams are consumed, only on (master_seed, stream_index).
inline std::mt19937_64 stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed ^ (0x632be59bd9b4e019ULL * (stream_index + 1));
    std::uint64_t a = splitmix64(s), b = splitmix64(s), c = splitmix64(s), d = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

inline double uniform01(std::mt19937_64& gen) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
}

}  // namespace lplb::rng
