#pragma once

// Test-only oracles, independent of the library code paths they check:
// brute-force searches, exhaustive enumerations, and the chord construction.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pelldescent/conic.hpp"

namespace oracles {

using pelldescent::ConicPoint;
using pelldescent::Int;
using pelldescent::PellConic;
using pelldescent::Rat;

// Legendre symbol by exhaustive square search mod an odd prime.
inline int slow_legendre(long a, long p) {
    long r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (long y = 1; y < p; ++y)
        if (y * y % p == r) return 1;
    return -1;
}

// Fourth powers mod p by enumeration.
inline bool is_fourth_power_mod(long a, long p) {
    long r = ((a % p) + p) % p;
    for (long y = 1; y < p; ++y) {
        long y2 = y * y % p;
        if (y2 * y2 % p == r) return true;
    }
    return false;
}

// Minimal y > 0 with delta y^2 + 4 square, bounded.
inline std::optional<std::pair<Int, Int>> brute_fundamental(const Int& delta, unsigned long ycap) {
    for (Int y = 1; y <= long(ycap); ++y) {
        Int t = delta * y * y + 4;
        if (t > 0 && pelldescent::is_perfect_square(t))
            return std::make_pair(pelldescent::isqrt_exact(t), y);
    }
    return std::nullopt;
}

// Minimal X > 0 with (a X^2 - 4)/b a perfect square, X <= xcap. 128-bit.
inline std::optional<std::pair<long, long>> brute_descendant_solution(long a, long b, long xcap) {
    for (long x = 1; x <= xcap; ++x) {
        __int128 t = (__int128)a * x * x - 4;
        if (t < 0 || t % b) continue;
        __int128 q = t / b;
        long s = (long)sqrtl((long double)q);
        for (long c = s > 1 ? s - 1 : 0; c <= s + 1; ++c)
            if ((__int128)c * c == q) return std::make_pair(x, c);
    }
    return std::nullopt;
}

// All points of X^2 - delta Y^2 = 4 over F_p by double enumeration.
inline std::vector<std::pair<unsigned long, unsigned long>> brute_points_mod_p(const Int& delta,
                                                                               unsigned long p) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    unsigned long dm = mpz_fdiv_ui(delta.get_mpz_t(), p);
    for (unsigned long x = 0; x < p; ++x)
        for (unsigned long y = 0; y < p; ++y)
            if ((x * x + p * p - dm * y * y % p - 4 % p) % p == 0) out.emplace_back(x, y);
    return out;
}

// Second intersection of the slope-m line through N = (2,0) with the conic —
// the geometric parametrization of Prop. on the group law.
inline ConicPoint chord_point(const PellConic& c, const Rat& m) {
    Rat den = c.delta() * m * m - 1;
    Rat x = 2 * (c.delta() * m * m + 1) / den;
    Rat y = 4 * m / den;
    return c.point(x, y);
}

// Chord-construction addition: parallel to PQ through N; the independent
// oracle for the algebraic formulas.
inline ConicPoint chord_add(const PellConic& c, const ConicPoint& p, const ConicPoint& q) {
    Rat x1 = p.x(), y1 = p.y(), x2 = q.x(), y2 = q.y();
    if (x1 == x2) {
        if (y1 != y2) return c.neutral();       // P + (-P)
        if (y1 == 0) return c.neutral();        // (+-2, 0) are 2-torsion
        return chord_point(c, x1 / (c.delta() * y1));  // tangent slope
    }
    return chord_point(c, (y1 - y2) / (x1 - x2));
}

// Deterministic random rational points via chord slopes.
class PointSampler {
  public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

    Rat slope(long lim = 40) {
        long num = long(rng_() % (2 * lim + 1)) - lim;
        long den = 1 + long(rng_() % lim);
        return Rat(num, den);
    }

    ConicPoint rational_point(const PellConic& c, long lim = 40) {
        return chord_point(c, slope(lim));
    }

    std::uint64_t next() { return rng_(); }

  private:
    std::mt19937_64 rng_;
};

}  // namespace oracles
