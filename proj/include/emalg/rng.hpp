#pragma once

#include <cstdint>

#include "rational.hpp"

namespace emalg {

/// splitmix64 step: platform-independent, no global state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic generator. Audits derive one Rng per sample index from
/// (seed, index), so results are identical regardless of worker count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) { (void)splitmix64(state_); }

    static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed + 0x9E3779B97F4A7C15ull * (index + 1));
    }

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform in [lo, hi], inclusive. Modulo bias is negligible at the
    /// small ranges used for sampling.
    long long uniform(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin() { return (next() & 1) != 0; }

    /// Small signed rational, numerator in [-max_num, max_num], denominator in [1, max_den].
    Rat small_rat(long long max_num = 8, long long max_den = 5) {
        return Rat(Int(uniform(-max_num, max_num)), Int(uniform(1, max_den)));
    }

    /// Strictly positive rational, numerator and denominator in [1, bound].
    Rat positive_rat(long long bound = 9) {
        return Rat(Int(uniform(1, bound)), Int(uniform(1, bound)));
    }

    double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::uint64_t state_;
};

}  // namespace emalg
