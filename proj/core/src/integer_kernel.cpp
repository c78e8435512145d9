#include "pelldescent/integer_kernel.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace pelldescent {

bool Factorization::is_squarefree() const {
    for (const auto& [p, e] : factors)
        if (e > 1) return false;
    return true;
}

std::vector<Int> Factorization::primes() const {
    std::vector<Int> out;
    out.reserve(factors.size());
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

Int isqrt_exact(const Int& n) {
    assert(is_perfect_square(n));
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

static Int powm(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long p : small) {
        if (n == p) return true;
        if (mpz_fdiv_ui(n.get_mpz_t(), p) == 0) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    // The 12-base set is a deterministic test below 3.3e24; the extras keep the
    // test deterministic (no RNG) for anything larger we might meet.
    static const unsigned long bases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                          37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};
    Int nm1 = n - 1;
    for (unsigned long b : bases) {
        if (n <= b) break;  // small n were settled by trial division above
        Int x = powm(Int(b), d, n);
        if (x == 1 || x == nm1) continue;
        bool composite = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == nm1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

// Brent's cycle-finding variant of Pollard rho, f(x) = x^2 + c mod n.
// Deterministic: callers sweep c = 1, 2, 3, ...
Int rho_brent(const Int& n, unsigned long c, unsigned long max_iters) {
    Int x(2), y(2), q(1), g(1), ys(2);
    unsigned long r = 1, iters = 0;
    const unsigned long m = 128;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * (x - y) % n;
            }
            g = gcd(q, n);
            k += m;
            iters += lim;
            if (iters > max_iters) return Int(0);
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack one step at a time
        do {
            ys = (ys * ys + c) % n;
            g = gcd(Int(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Int(0) : g;
}

void factor_into(const Int& n, std::map<Int, unsigned>& out, const FactorBudget& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    for (unsigned round = 1; round <= budget.rho_rounds; ++round) {
        Int g = rho_brent(n, round, budget.rho_iterations);
        if (g != 0 && g != 1 && g != n) {
            factor_into(g, out, budget);
            factor_into(Int(n / g), out, budget);
            return;
        }
    }
    throw BudgetExceeded("unfactored: rho budget exhausted on " + n.get_str());
}

}  // namespace

Factorization factor(const Int& n, const FactorBudget& budget) {
    if (n < 1) throw ContractViolation("factor: n must be >= 1");
    Factorization out;
    out.value = n;
    if (n == 1) return out;

    Int rest = n;
    std::map<Int, unsigned> acc;
    for (unsigned long p = 2; p <= budget.trial_limit; p = (p == 2 ? 3 : p + 2)) {
        if (Int(p) * p > rest) break;
        while (mpz_fdiv_ui(rest.get_mpz_t(), p) == 0) {
            acc[Int(p)]++;
            rest /= p;
        }
    }
    if (rest > 1) {
        if (rest <= Int(budget.trial_limit) * Int(budget.trial_limit) || is_prime(rest))
            acc[rest]++;
        else
            factor_into(rest, acc, budget);
    }
    for (auto& [p, e] : acc) out.factors.emplace_back(p, e);

    Int check(1);
    for (const auto& [p, e] : out.factors)
        for (unsigned i = 0; i < e; ++i) check *= p;
    if (check != n) throw ContractViolation("factor: recomposition failed");
    return out;
}

SquarefreeParts squarefree_decompose(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw ContractViolation("squarefree_decompose: n must be nonzero");
    Factorization f = factor(abs(n), budget);
    SquarefreeParts out{Int(sgn(n)), Int(1)};
    for (const auto& [p, e] : f.factors) {
        if (e & 1) out.core *= p;
        for (unsigned i = 0; i < e / 2; ++i) out.cofactor *= p;
    }
    return out;
}

int kronecker(const Int& a_in, const Int& n_in) {
    Int a = a_in, n = n_in;
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) res = -res;
    }
    unsigned long t = mpz_scan1(n.get_mpz_t(), 0);
    n >>= t;
    if (t) {
        if (mpz_even_p(a.get_mpz_t())) return 0;
        unsigned long am8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
        if ((t & 1) && (am8 == 3 || am8 == 5)) res = -res;
    }
    // Jacobi(a, n) with n odd positive
    a = mod_floor(a, n);
    while (a != 0) {
        unsigned long z = mpz_scan1(a.get_mpz_t(), 0);
        a >>= z;
        unsigned long nm8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
        if ((z & 1) && (nm8 == 3 || nm8 == 5)) res = -res;
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && (nm8 & 3) == 3) res = -res;
        swap(a, n);
        a = mod_floor(a, n);
    }
    return n == 1 ? res : 0;
}

int quartic_symbol(const Int& a, const Int& m, const FactorBudget& budget) {
    if (m <= 0) throw ContractViolation("quartic_symbol: denominator must be positive");
    int res = 1;
    for (const auto& [p, e] : factor(m, budget).factors) {
        int sym;
        if (p == 2) {
            if (mod_floor(a, 8) != 1)
                throw DomainError("quartic symbol undefined at 2: " + a.get_str() +
                                  " is not 1 mod 8");
            Int k = (a - 1) / 8;
            sym = mpz_odd_p(k.get_mpz_t()) ? -1 : 1;
        } else {
            if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 1)
                throw DomainError("quartic symbol undefined: prime " + p.get_str() +
                                  " is not 1 mod 4");
            Int t = powm(mod_floor(a, p), Int((p - 1) / 4), p);
            if (t == 1)
                sym = 1;
            else if (t == p - 1)
                sym = -1;
            else
                throw DomainError("quartic symbol undefined: " + a.get_str() +
                                  " is not a quadratic residue mod " + p.get_str());
        }
        if (e & 1) res *= sym;
    }
    return res;
}

std::string Place::str() const {
    switch (kind) {
        case Kind::OddPrime: return p.get_str();
        case Kind::Two: return "2";
        default: return "inf";
    }
}

namespace {

// (u-1)/2 mod 2 and (u^2-1)/8 mod 2 for odd u.
int eps2(const Int& u) { return mpz_fdiv_ui(u.get_mpz_t(), 4) == 3 ? 1 : 0; }
int omega2(const Int& u) {
    unsigned long m = mpz_fdiv_ui(u.get_mpz_t(), 8);
    return (m == 3 || m == 5) ? 1 : 0;
}

}  // namespace

int hilbert(const Int& a_in, const Int& b_in, const Place& v) {
    if (a_in == 0 || b_in == 0) throw ContractViolation("hilbert: arguments must be nonzero");
    switch (v.kind) {
        case Place::Kind::Infinity:
            return (a_in < 0 && b_in < 0) ? -1 : 1;
        case Place::Kind::Two: {
            Int a = a_in, b = b_in;
            unsigned long al = mpz_scan1(a.get_mpz_t(), 0);
            a >>= al;
            unsigned long be = mpz_scan1(b.get_mpz_t(), 0);
            b >>= be;
            int e = eps2(a) * eps2(b) + int(al % 2) * omega2(b) + int(be % 2) * omega2(a);
            return (e & 1) ? -1 : 1;
        }
        default: {
            const Int& p = v.p;
            Int a = a_in, b = b_in;
            unsigned al = 0, be = 0;
            while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) { a /= p; ++al; }
            while (mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t())) { b /= p; ++be; }
            int res = 1;
            if ((al & 1) && (be & 1) && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) res = -res;
            if (be & 1) res *= kronecker(a, p);
            if (al & 1) res *= kronecker(b, p);
            return res;
        }
    }
}

std::vector<Place> places_dividing(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw ContractViolation("places_dividing: n must be nonzero");
    std::vector<Place> out{Place::infinity(), Place::two()};
    for (const auto& [p, e] : factor(abs(n), budget).factors)
        if (p != 2) out.push_back(Place::odd_prime(p));
    return out;
}

Int supported_core(const Int& v, const std::vector<Int>& support) {
    if (v == 0) throw ContractViolation("supported_core: value must be nonzero");
    Int rest = abs(v);
    Int c(sgn(v));
    for (const Int& p : support) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e & 1) c *= p;
    }
    if (!is_perfect_square(rest))
        throw ContractViolation("supported_core: " + v.get_str() +
                                " has odd-multiplicity primes outside the support");
    return c;
}

}  // namespace pelldescent
