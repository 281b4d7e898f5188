#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "pedd/rational.hpp"

namespace pedd {

/// Deterministic random source. mt19937_64 output is fully specified by the
/// standard and all derived draws below use explicit integer arithmetic, so
/// identical seeds give identical streams on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] inclusive, rejection-sampled.
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = range == 0 ? ~0ull : (~0ull / range) * range;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (range != 0 && x >= limit);
        return lo + static_cast<std::int64_t>(range == 0 ? x : x % range);
    }

    /// Random point on the unit circle.
    Complex unit_complex() {
        double theta = 2.0 * 3.14159265358979323846 * unit();
        return {std::cos(theta), std::sin(theta)};
    }

    /// Small random rational, numerator in [-12,12]\{0}, denominator in [1,8].
    Rational small_rational() {
        std::int64_t num = 0;
        while (num == 0) num = int_in(-12, 12);
        return Rational(num, int_in(1, 8));
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent deterministic streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Stable sub-seed for a named purpose ("cone", "cover", ...) and attempt index.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t salt = 0) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (char ch : tag) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ull;
    }
    return mix_seed(base ^ mix_seed(h ^ salt));
}

}  // namespace pedd
