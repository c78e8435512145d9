#pragma once

#include <cstdint>
#include <vector>

#include "pelldescent/conic.hpp"

namespace pelldescent {

// Element of Q^x / (Q^x)^2 as its canonical signed squarefree representative.
class SquareClass {
  public:
    /// Wrap an integer already known to be squarefree and nonzero.
    static SquareClass from_squarefree(Int rep);
    /// Class of an arbitrary nonzero integer (factors it, budgeted).
    static SquareClass of_value(const Int& v, const FactorBudget& budget = {});
    /// Class of a nonzero rational u/v = class of u*v.
    static SquareClass of_rational(const Rat& q, const FactorBudget& budget = {});
    /// Class of v whose odd-multiplicity primes all lie in `support`.
    static SquareClass of_supported(const Int& v, const std::vector<Int>& support);

    /// Group law. For squarefree u, v: core(uv) = uv / gcd(u,v)^2 — no factoring.
    SquareClass times(const SquareClass& o) const;

    bool trivial() const { return rep_ == 1; }
    const Int& rep() const { return rep_; }
    bool operator==(const SquareClass&) const = default;

  private:
    explicit SquareClass(Int rep) : rep_(std::move(rep)) {}
    Int rep_;
};

// First descendant T_a : a r^2 - b s^2 = 4 with ab = delta.
struct Descendant {
    Int a, b;

    bool on_curve(const Rat& r, const Rat& s) const { return a * r * r - b * s * s == 4; }
    bool operator==(const Descendant&) const = default;
};

struct DescendantPoint {
    Descendant host;
    Rat r, s;
};

DescendantPoint descendant_point(const Descendant& t, const Rat& r, const Rat& s);

// Finite elementary abelian 2-group of square classes with an explicit basis.
class TwoGroup {
  public:
    /// Span of the generators; keeps the first independent generators as basis.
    static TwoGroup span(const std::vector<SquareClass>& gens, const FactorBudget& budget = {});

    const std::vector<SquareClass>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    Int order() const { return Int(1) << basis_.size(); }
    bool contains(const SquareClass& c, const FactorBudget& budget = {}) const;
    /// All 2^rank elements (small groups only).
    std::vector<SquareClass> elements() const;

  private:
    std::vector<SquareClass> basis_;
    std::vector<std::uint64_t> reduced_;  // row-reduced support masks, same order
    std::vector<Int> atoms_;              // -1 and primes; index = bit position
};

/// The Weil map alpha: C(Q) -> Q^x/(Q^x)^2, (x,y) |-> class(x+2) for x != -2,
/// class(-delta) at (-2,0). Group homomorphism with kernel 2C(Q).
SquareClass weil_map(const PellConic& c, const ConicPoint& p);

struct IntegralClassification {
    Descendant host;
    Int r, s;  // x+2 = a r^2, x-2 = b s^2 (s = 0 exactly at (2,0))
};

/// Identify the descendant an integral point with x > 0 comes from, and the
/// integral solution (r,s) on it. x <= 0 -> DomainError (negate the point or
/// use the T_{-delta/a} identification).
IntegralClassification classify_integral_point(const PellConic& c, const ConicPoint& p);

/// (r,s) on T_a lifts to (a r^2 - 2, r s) on C.
ConicPoint lift_to_conic(const PellConic& c, const DescendantPoint& p);

/// The canonical descendant list: for odd delta all positive squarefree
/// a | delta; for delta = 4d the squarefree a | d plus, when d = 3 mod 4,
/// the even branch a = 2A with A | d squarefree. Sorted by a.
std::vector<Descendant> enumerate_descendants(const PellConic& c);

/// T_a * T_b = T_c with ab = c m^2, c the canonical representative.
Descendant compose(const PellConic& c, const Descendant& s, const Descendant& t);

/// im(alpha on C(Z)): generated by class(-delta) and alpha(fundamental point)
/// for delta > 0; alpha of the torsion group for delta < 0.
TwoGroup weil_image(const PellConic& c);

/// W_2 as positive representatives: the image of weil_image under the
/// T_a ~ T_{-delta/a} identification (quotient by class(-delta)).
TwoGroup integral_class_group(const PellConic& c);

/// Positive representative of a class under the quotient by class(-delta).
SquareClass positive_representative(const PellConic& c, const SquareClass& cls);

}  // namespace pelldescent
