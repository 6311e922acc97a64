#pragma once

#include <cstdint>
#include <random>

namespace ndnqos {

/// splitmix64 step; used to derive independent stream seeds from the master
/// seed and stable identifiers, so adding a node or link never perturbs the
/// draws of existing ones.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ mix64(b));
}

/// Deterministic pseudorandom stream. All distribution mapping is done by
/// hand (not std::*_distribution) so that draws are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t u64() { return gen_(); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(gen_() >> 32); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi], inclusive. Modulo bias is negligible for
    /// the small ranges used here (jitter and backoff windows).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(gen_() % span);
    }

    /// True with probability p; draws exactly once.
    bool chance(double p) { return uniform01() < p; }

private:
    std::mt19937_64 gen_;
};

} // namespace ndnqos
