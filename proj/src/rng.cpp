#include "tpred/rng.hpp"

namespace tpred {

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::string_view label, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
    // FNV-1a over the label, then chained finalizer rounds.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : label) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t part : {h, a, b, c}) k = mix64(k ^ (part + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2)));
    return k;
}

std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n) {
    const std::uint64_t limit = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= limit) return r % n;
    }
}

} // namespace tpred
