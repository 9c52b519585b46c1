#pragma once

#include <cstdint>

namespace locspan {

/// Counter-free splittable PRNG (splitmix64). Every random decision in the
/// library draws from a stream derived with derive_stream(), so results are
/// reproducible independently of iteration order and identical across runs
/// with the same seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    constexpr explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t reject = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= reject) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return next_unit() < p;
    }
};

namespace detail {
constexpr std::uint64_t mix_fold(std::uint64_t acc, std::uint64_t x) {
    SplitMix64 m(acc ^ (x * 0xff51afd7ed558ccdull + 0x9e3779b97f4a7c15ull));
    return m.next();
}
} // namespace detail

/// Purpose tags keeping independent decision streams apart.
enum class StreamTag : std::uint64_t {
    TrialSamples = 1, ///< per (level, virtual node, trial) query-edge draws
    CenterCoin = 2,   ///< per (level, virtual node) center marking
    GraphGen = 3,     ///< graph generators
    Payload = 4,      ///< broadcast payload synthesis
};

/// Derives an independent stream from (seed, tag, a, b, c).
inline SplitMix64 derive_stream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = detail::mix_fold(seed, static_cast<std::uint64_t>(tag));
    s = detail::mix_fold(s, a);
    s = detail::mix_fold(s, b);
    s = detail::mix_fold(s, c);
    return SplitMix64(s);
}

} // namespace locspan
