#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace uncommon {

/// Deterministic random stream used everywhere randomness is needed.
/// Double extraction is done by hand (not via std::*_distribution) so that
/// a given seed produces the same sequence on every platform/compiler.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {
        // splitmix64 warm-up decorrelates small/sequential seeds
        for (int i = 0; i < 4; ++i) next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (pairs cached).
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Standard complex normal, E|z|^2 = 1.
    std::complex<double> complex_gaussian() {
        const double s = 0.7071067811865475244; // 1/sqrt(2)
        return {s * gaussian(), s * gaussian()};
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace uncommon
