#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pelldescent/errors.hpp"

namespace pelldescent {

using Int = mpz_class;
using Rat = mpq_class;

// Effort limits for factor(); exceeding them raises BudgetExceeded ("unfactored"),
// never a wrong answer.
struct FactorBudget {
    unsigned long trial_limit = 1'000'000;    // trial division bound
    unsigned rho_rounds = 64;                 // distinct Pollard-rho polynomials tried
    unsigned long rho_iterations = 4'000'000; // iterations per round
};

struct Factorization {
    Int value;                                      // >= 1
    std::vector<std::pair<Int, unsigned>> factors;  // (prime, exponent), primes ascending

    bool is_squarefree() const;
    std::vector<Int> primes() const;
};

/// Deterministic primality test (Miller-Rabin with a fixed base set,
/// proven for n < 3.3e24; extra fixed bases beyond that).
bool is_prime(const Int& n);

/// Factor n >= 1. Deterministic; throws BudgetExceeded if the budget runs out.
Factorization factor(const Int& n, const FactorBudget& budget = {});

struct SquarefreeParts {
    Int core;      // squarefree, sign of the input
    Int cofactor;  // positive; input = core * cofactor^2
};

/// n != 0 -> (core, cofactor) with n = core*cofactor^2, core squarefree.
SquarefreeParts squarefree_decompose(const Int& n, const FactorBudget& budget = {});

/// Kronecker symbol (a/n), the standard total extension of Legendre/Jacobi.
int kronecker(const Int& a, const Int& n);

/// Quartic residue symbol (a/m)_4 in {-1,+1}, extended multiplicatively over
/// the prime factors of m > 0. Defined for odd p | m only when p = 1 mod 4 and
/// a is a quadratic residue mod p (computed as a^((p-1)/4) mod p); for 2 | m
/// only when a = 1 mod 8, as (-1)^((a-1)/8). Violations raise DomainError
/// naming the offending prime.
int quartic_symbol(const Int& a, const Int& m, const FactorBudget& budget = {});

// A place of Q: an odd prime, 2, or the real place.
struct Place {
    enum class Kind { OddPrime, Two, Infinity };
    Kind kind;
    Int p;  // set only for OddPrime

    static Place odd_prime(Int q) { return {Kind::OddPrime, std::move(q)}; }
    static Place two() { return {Kind::Two, 0}; }
    static Place infinity() { return {Kind::Infinity, 0}; }

    std::string str() const;
    bool operator==(const Place&) const = default;
};

/// Hilbert symbol (a,b)_v over the completion at v; a, b nonzero.
int hilbert(const Int& a, const Int& b, const Place& v);

/// The places {oo, 2} plus the odd primes dividing n (n != 0).
std::vector<Place> places_dividing(const Int& n, const FactorBudget& budget = {});

/// Squarefree core of v under the promise that every prime with odd
/// multiplicity lies in `support`. Strips those primes, insists the leftover
/// cofactor is a perfect square (ContractViolation otherwise). This is how
/// classes of conic-point coordinates are extracted without factoring them.
Int supported_core(const Int& v, const std::vector<Int>& support);

// Small exact helpers shared across modules.
Int mod_floor(const Int& a, const Int& m);       // representative in [0, m)
bool is_perfect_square(const Int& n);
Int isqrt_exact(const Int& n);                   // requires n a perfect square

}  // namespace pelldescent
