#pragma once

#include "suspfactor/rational.hpp"

#include <cstdint>

namespace suspfactor {

// splitmix64: tiny, seedable, platform-independent. Every randomized routine
// in the library threads one of these explicitly so that a (seed, call
// sequence) pair fully determines the output — the report files depend on it.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). pre: n > 0. Rejection-free modulo is fine here: the
    // bias at n <= 1e6 is ~2^-44, irrelevant for sampling test points, and
    // determinism matters more than perfect uniformity.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool coin() { return next() & 1; }

    // Uniform-ish rational in [0, 1): p/q with q in [2, max_den].
    Rational unit_rational(std::uint64_t max_den = 1000000) {
        std::uint64_t q = 2 + below(max_den - 1);
        std::uint64_t p = below(q);
        return Rational(p, q);
    }

    // Rational in [lo, hi) on a grid of the given denominator.
    Rational rational_in(long lo, long hi, std::uint64_t den = 1000) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) * den;
        return Rational(lo) + Rational(below(span), den);
    }

private:
    std::uint64_t state_;
};

}  // namespace suspfactor
