#pragma once

#include <optional>
#include <vector>

#include "pelldescent/integer_kernel.hpp"

namespace pelldescent {

// Normalized discriminant: delta = d if d = 1 mod 4, else 4d, for the
// squarefree core d of the input.
struct Discriminant {
    Int delta;
    Int d;                      // squarefree core, delta = d or 4d
    Factorization delta_factors;  // of |delta|

    bool positive() const { return delta > 0; }
};

/// Build the Discriminant from any nonzero integer via its squarefree core.
/// A square input (core 1) is a degenerate conic -> DomainError.
Discriminant normalize_discriminant(const Int& d_in, const FactorBudget& budget = {});

class PellConic;

// Rational point on X^2 - delta Y^2 = 4, stored as x = r/n, y = s/n with
// gcd(r,n) = gcd(s,n) = 1, n >= 1 (the shared-denominator lemma guarantees
// this form exists for every rational point).
class ConicPoint {
  public:
    ConicPoint(const PellConic& c, const Rat& x, const Rat& y);

    const Int& rx() const { return r_; }
    const Int& sy() const { return s_; }
    const Int& den() const { return n_; }
    Rat x() const { return canonical(Rat(r_, n_)); }
    Rat y() const { return canonical(Rat(s_, n_)); }
    bool is_integral() const { return n_ == 1; }
    bool operator==(const ConicPoint& o) const { return r_ == o.r_ && s_ == o.s_ && n_ == o.n_; }

    static Rat canonical(Rat q) { q.canonicalize(); return q; }

  private:
    ConicPoint(Int r, Int s, Int n) : r_(std::move(r)), s_(std::move(s)), n_(std::move(n)) {}
    Int r_, s_, n_;
    friend class PellConic;
    friend ConicPoint double_point_raw(const ConicPoint&);
};

// Unit (t + u*sqrt(delta))/2 of the order of discriminant delta, norm +1.
struct QuadUnit {
    Int t, u;
    bool operator==(const QuadUnit&) const = default;
};

// Fundamental solution of G^2 - delta*B^2 = 4*norm (norm = +1 or -1).
struct FundamentalUnit {
    Int t, u;
    int norm;
};

// Points of C over F_p together with p (group structure lives in fp_* helpers).
struct FpPoints {
    unsigned long p;
    unsigned long delta_mod_p;
    std::vector<std::pair<unsigned long, unsigned long>> points;
};

class PellConic {
  public:
    explicit PellConic(Discriminant d) : disc_(std::move(d)) {}

    const Discriminant& disc() const { return disc_; }
    const Int& delta() const { return disc_.delta; }
    ConicPoint neutral() const { return ConicPoint(Int(2), Int(0), Int(1)); }
    ConicPoint point(const Rat& x, const Rat& y) const { return ConicPoint(*this, x, y); }
    ConicPoint point(const Int& x, const Int& y) const { return ConicPoint(*this, Rat(x), Rat(y)); }
    bool on_curve(const Rat& x, const Rat& y) const;

  private:
    Discriminant disc_;
};

/// Group law based at N = (2,0): P+Q = ((xz + delta*yw)/2, (xw + yz)/2).
/// Integral inputs give integral output.
ConicPoint add(const PellConic& c, const ConicPoint& p, const ConicPoint& q);
ConicPoint negate(const PellConic& c, const ConicPoint& p);
ConicPoint double_point(const PellConic& c, const ConicPoint& p);
ConicPoint scalar_multiple(const PellConic& c, const ConicPoint& p, const Int& k);

/// All rational Q with 2Q = P (empty or a pair).
std::vector<ConicPoint> halve(const PellConic& c, const ConicPoint& p);

/// The torsion subgroup of C(Q): 6 points for delta=-3, 4 for delta=-4,
/// {(2,0),(-2,0)} otherwise. All integral.
std::vector<ConicPoint> torsion_points(const PellConic& c);
bool is_torsion(const PellConic& c, const ConicPoint& p);

/// Fundamental +4 solution (t, u, norm) of the order of discriminant delta,
/// found by the PQa expansion of (P0 + sqrt(delta))/2, P0 = delta mod 2.
/// Requires delta > 0.
FundamentalUnit fundamental_unit(const PellConic& c);

/// The integral point (x,y), x > 2, y > 0 with minimal x; generates the free
/// part of C(Z) together with (-2,0). Requires delta > 0.
ConicPoint fundamental_point(const PellConic& c);

/// Enumerate C(F_p) for an odd prime p not dividing delta.
FpPoints points_mod_p(const PellConic& c, unsigned long p);

std::pair<unsigned long, unsigned long> fp_add(const FpPoints& ctx,
                                               std::pair<unsigned long, unsigned long> a,
                                               std::pair<unsigned long, unsigned long> b);
std::pair<unsigned long, unsigned long> fp_scalar_multiple(
    const FpPoints& ctx, std::pair<unsigned long, unsigned long> a, unsigned long k);

/// phi: C(Z) -> units of norm 1, (x,y) |-> (x + y*sqrt(delta))/2.
QuadUnit to_unit(const PellConic& c, const ConicPoint& p);
ConicPoint from_unit(const PellConic& c, const QuadUnit& u);
QuadUnit unit_mul(const PellConic& c, const QuadUnit& a, const QuadUnit& b);

}  // namespace pelldescent
