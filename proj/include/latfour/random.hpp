#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace latfour::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic random stream. Not using <random> distributions on purpose:
/// their output is implementation-defined and reports must be byte-stable.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0,1), 53-bit resolution.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(next_u64() % std::uint64_t(hi - lo + 1));
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do { u1 = uniform01(); } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Complex with iid standard normal real and imaginary parts.
    std::complex<double> cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Derives a child seed from (seed, path). Used so that the coefficient drawn
/// for a given mode depends only on (seed, trial, mode index), never on band
/// size or enumeration order; enlarging the band then keeps all previously
/// drawn coefficients, which is what makes drift comparisons across K
/// statistically meaningful.
inline std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::int64_t> path) {
    std::uint64_t h = seed ^ 0xd1b54a32d192ed03ull;
    for (std::int64_t v : path) {
        h ^= std::uint64_t(v) * 0xff51afd7ed558ccdull + 0x9e3779b97f4a7c15ull;
        h = splitmix64(h);
    }
    return h;
}

} // namespace latfour::rng
