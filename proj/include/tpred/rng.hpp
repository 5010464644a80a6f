//
// Keyed random streams. Every draw is a pure function of (seed, key...), so
// results do not depend on thread scheduling or on how work is split.
//

#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace tpred {

// SplitMix64 (Steele, Lea & Flood); satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

// Folds the components into one stream key.
std::uint64_t stream_key(std::uint64_t seed, std::string_view label, std::uint64_t a = 0, std::uint64_t b = 0,
                         std::uint64_t c = 0);

// Uniform on [0, 1) with 53 random bits; bit-identical on every platform.
inline double uniform01(SplitMix64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, n) by rejection; n > 0.
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n);

} // namespace tpred
