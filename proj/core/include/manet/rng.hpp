#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace manet {

/// Stateless splitmix64 finalizer. Used for seed derivation only, never for
/// the simulation stream itself.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Folds a list of words into a base seed, one splitmix64 round per word.
/// The word order is part of the stability contract: traces and session lists
/// derived from the same (base, words) are reproducible across platforms.
inline std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> words) {
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t w : words)
        s = splitmix64(s ^ w);
    return s;
}

/// Seeded PRNG with portable draw helpers.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard, and every distribution below is hand-rolled on top of raw
/// 64-bit draws. Standard-library distributions are implementation-defined
/// and must not be used anywhere determinism matters.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) {
        return lo + uniform_unit() * (hi - lo);
    }

    /// Uniform integer in [0, n) by rejection, bias-free.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n <= 1)
            return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return uniform_unit() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

} // namespace manet
