#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pelldescent/selmer.hpp"

namespace pelldescent {

enum class Conclusion { Solvable, Unsolvable, Undetermined };

struct CriterionVerdict {
    Conclusion conclusion = Conclusion::Undetermined;
    std::string rule;  // identifier of the rule that fired
    std::vector<std::pair<std::string, int>> symbols;  // evaluated symbols by name
};

std::string to_string(Conclusion c);

/// Necessary conditions for a r^2 - b s^2 = 4 to have an integral solution
/// when delta = p_1...p_n with all p_i = 1 mod 4 and ab = delta:
///   (1) (a/q) = 1 for q | b,  (2) (b/p) = 1 for p | a,  (3) (b/a)_4 = +1.
/// Returns Unsolvable when one fails, Undetermined when all hold (the
/// conditions are necessary, not sufficient). Out-of-scope delta (a prime
/// factor = 3 mod 4, or even) -> DomainError.
CriterionVerdict solvability_conditions(const PellConic& c, const Int& a);

struct ScholzRow {
    Int a;
    std::string equation;             // a X^2 - b Y^2 = 1 form
    std::string condition;            // the necessary condition, human-readable
    std::optional<bool> condition_holds;  // nullopt when the symbol is undefined
};

struct ScholzReport {
    Int p, q;
    int legendre;                     // (p/q) = (q/p)
    std::optional<int> p4, q4;        // (p/q)_4, (q/p)_4 when defined
    Int guaranteed_a;                 // descendant guaranteed solvable; 0 if none
    std::vector<ScholzRow> table;     // rows a = 1, p, q, pq
    Int sha_element_a;                // descendant representing order 2 in Sha; 0 if none
};

/// The Scholz table for X^2 - pq Y^2 = 1, p = q = 1 mod 4 primes: quadratic
/// and quartic symbols, the guaranteed-solvable descendant, the four
/// necessary-condition rows, and the Sha detection case (mixed quartic
/// symbols put the single-prime descendant NOT containing the fundamental
/// point into Sel_2 \ W_2).
ScholzReport scholz_classify(const Int& p, const Int& q);

/// Solvability of X^2 - pq Y^2 = -1 from residue symbols alone:
/// solvable if (p/q) = -1, or (p/q) = 1 with (p/q)_4 = (q/p)_4 = -1;
/// unsolvable if (p/q) = 1 with (p/q)_4 != (q/p)_4 (necessary condition for
/// T_pq fails); undetermined when both quartic symbols are +1.
CriterionVerdict negative_pell(const Int& p, const Int& q);

/// Independent oracle: X^2 - d Y^2 = -1 is integrally solvable iff the
/// continued fraction of sqrt(d) has odd period length. d > 0 nonsquare.
bool negative_pell_parity_oracle(const Int& d);

struct RichaudDegertForm {
    Int a;           // descendant index
    char coordinate; // 'r' or 's', the coordinate equal to 1 or 2
    Int coordinate_value;
    Int other;       // the other coordinate of the integral point
    Int n, rem;      // delta = n^2 + rem with rem | 4n
};

/// Enumerate descendant solutions with r or s in {1,2}; each certifies that
/// delta is of Richaud-Degert type n^2 + rem with rem | 4n. Exact checks,
/// no search. delta > 0.
std::vector<RichaudDegertForm> richaud_degert_solutions(const PellConic& c);

}  // namespace pelldescent
