#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pelldescent/descent.hpp"

namespace pelldescent {

// A height with its provenance and a rigorous error bound (natural-log scale).
struct HeightValue {
    enum class Method { Naive, Limit, Closed };
    double value = 0.0;
    double error_bound = 0.0;
    Method method = Method::Naive;
    unsigned iterations = 0;  // for Method::Limit: the n actually reached
};

/// H(r/s) = max(|r|, |s|) in lowest terms; H(0) = 1.
Int naive_height(const Rat& q);
/// H(P) = H(x) = max(|r|, n) for P = (r/n, s/n).
Int naive_height(const ConicPoint& p);

/// h0(P) = log H(P).
HeightValue log_height(const ConicPoint& p);

// Bigint size cap for the doubling iteration (bits of the numerator).
struct HeightBudget {
    unsigned long max_bits = 64u << 20;  // 64 Mbit
};

/// h(P) as 2^-n h0(2^n P) with Cauchy error bound 2^-n log 4. If the
/// coordinate budget is hit early, returns the partial value with the bound
/// of the iteration actually reached.
HeightValue canonical_height_limit(const PellConic& c, const ConicPoint& p, unsigned iterations,
                                   const HeightBudget& budget = {});

/// Closed forms: delta > 0: log((|r| + |s| sqrt(delta))/2); delta < 0: log n.
HeightValue canonical_height_closed(const PellConic& c, const ConicPoint& p);

struct AxiomCheck {
    std::string name;
    bool passed;
    double lhs, rhs;  // the two sides compared (context-dependent)
};

struct HeightAxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_passed() const;
};

/// Evaluates the canonical-height laws on (P, Q) in closed form: torsion
/// vanishing, h(2P) = 2h(P), subadditivity, the double inequality, the
/// parallelogram equality, h(mP) = m h(P) for m <= 8, and the naive-height
/// sandwich H(P)^2/4 <= H(2P) <= 4 H(P)^2 in exact integer arithmetic.
/// Failures are reported, never thrown.
HeightAxiomReport height_axiom_report(const PellConic& c, const ConicPoint& p,
                                      const ConicPoint& q, double tolerance = 1e-9);

struct DescendantHeightBound {
    Int height_descendant;  // H(r-coordinate of the descendant point)
    Int height_lift;        // H of the lifted conic point
    bool lower_ok, upper_ok;  // H^2 <= 4a H(Q) and H(Q) <= 4a H^2, exact
};

/// The sandwich H(P)^2/(4a) <= H(Q) <= 4a H(P)^2 for Q = lift(T_a, P),
/// checked in exact integer arithmetic.
DescendantHeightBound descendant_height_bound(const PellConic& c, const DescendantPoint& p);

struct MordellWeilResult {
    std::vector<ConicPoint> torsion_basis;    // one generator of the torsion group
    std::vector<ConicPoint> free_generators;  // empty (delta < 0) or one point
    // descent certificate
    std::vector<ConicPoint> coset_representatives;  // Gamma for C(Z)/2C(Z)
    double height_bound = 0.0;                      // c = max h(Gamma)
    bool enumeration_complete = false;  // the |h| <= c sweep ran to completion
};

/// Mordell-Weil descent: coset representatives from the Weil image, height
/// bound c, the points of height <= c, reduced to (torsion, one generator).
MordellWeilResult mordell_weil_generators(const PellConic& c,
                                          unsigned long enumeration_cap = 100000);

}  // namespace pelldescent
