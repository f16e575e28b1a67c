#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qsrlab {

/// Deterministic 64-bit generator (splitmix64). The state advances by the
/// fixed increment 0x9E3779B97F4A7C15 and the output is the mixed state:
///
///   z  = state += 0x9E3779B97F4A7C15
///   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
///   z ^= z >> 27;  z *= 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Only integer arithmetic on fixed-width words is used, so seeded runs are
/// byte-identical across platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Top k bits of one draw, 0 <= k <= 32.
    std::uint32_t next_bits(int k) {
        if (k == 0) return 0;
        return static_cast<std::uint32_t>(next() >> (64 - k));
    }

    /// Uniform in [0, n) by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t limit = n * (~std::uint64_t{0} / n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; one spare value cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Derives an independent stream, e.g. one per parallel trial.
    SplitMix64 fork(std::uint64_t stream) {
        SplitMix64 child(state_ ^ (0xBF58476D1CE4E5B9ull * (stream + 1)));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qsrlab
