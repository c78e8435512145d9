#pragma once

#include <cstdint>
#include <optional>

#include "pelldescent/descent.hpp"

namespace pelldescent {

struct LocalVerdict {
    Place place;
    bool solvable;   // hilbert(a, delta, place) == +1
    int symbol;      // the Hilbert symbol value (the witness when it fails)
};

/// Everywhere-local solvability of T_a, delta > 0. Evaluated twice — once by
/// the Legendre conditions (a/q) = (-b/p) = +1 over the odd primes of a and b,
/// once by Hilbert symbols (a,delta)_v over v | 2*delta*oo — and the routes
/// must agree (ContractViolation otherwise).
std::pair<bool, std::vector<LocalVerdict>> locally_solvable(const PellConic& c,
                                                            const Descendant& t);

/// Sel_2(C): classes of everywhere-locally-solvable descendants. delta > 0.
TwoGroup selmer_group(const PellConic& c);

struct ShaResult {
    Int order;  // #Sel_2 / #W_2, a power of 2
    std::vector<Descendant> representatives;  // locally solvable, no integral point
};

/// Sha_2(C) from the exact sequence 1 -> W_2 -> Sel_2 -> Sha_2 -> 1.
ShaResult sha2(const PellConic& c);

struct WitnessOptions {
    // 0 = automatic (Holzer-style: denominators to 2(sqrt(delta)+1), s-numerators
    // to 4(sqrt(a)+1)); otherwise a hard cap on the denominator.
    unsigned long denominator_cap = 0;
    unsigned long numerator_multiplier = 4;
};

/// Smallest-denominator rational point on a locally solvable T_a (deterministic
/// search order). nullopt if the cap is hit.
std::optional<DescendantPoint> rational_witness(const PellConic& c, const Descendant& t,
                                                const WitnessOptions& opts = {});

struct DescendantRow {
    Descendant t;
    bool solvable_everywhere;
    std::vector<LocalVerdict> verdicts;
    std::optional<std::pair<Int, Int>> integral_point;
    std::optional<DescendantPoint> witness;  // rational witness when only in Sel_2
};

struct SelmerReport {
    Discriminant disc;
    TwoGroup selmer, w2;
    Int sha_order;
    std::vector<DescendantRow> rows;
};

/// Full per-descendant analysis backing the CLI tables. Works for delta < 0
/// too (tiny direct enumeration; Selmer-side groups only for delta > 0).
SelmerReport analyze_descendants(const PellConic& c, const WitnessOptions& opts = {});

// Redei matrix over F2: rows/columns indexed by the prime discriminant factors
// p* = (-1)^((p-1)/2) p of an odd Delta; off-diagonal (i,j) encodes (p_i*/p_j),
// diagonal forced by the column-sum relation.
struct RedeiMatrix {
    std::vector<Int> primes;
    std::vector<Int> prime_discriminants;
    std::vector<std::uint64_t> rows;  // bit j of rows[i] = entry (i, j)
    unsigned rank = 0;
};

/// delta odd, squarefree, positive (DomainError otherwise: "not a product of
/// positive prime discriminants" covers the even case the paper excludes).
RedeiMatrix redei_matrix(const PellConic& c);

struct RedeiCheck {
    unsigned e4;      // t - 1 - rank
    bool consistent;  // #Sel_2 == 2^(e4+1)
    RedeiMatrix matrix;
};

RedeiCheck redei_check(const PellConic& c);

/// Is delta = delta1 * delta2 a splitting of the second kind, i.e. are all the
/// cross symbols (delta1/p2), (delta2/p1) trivial? Both factors must be
/// discriminant-shaped (0 or 1 mod 4).
bool splitting_second_kind(const Int& delta, const Int& delta1, const FactorBudget& budget = {});

}  // namespace pelldescent
