#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pelldescent/integer_kernel.hpp"

using namespace pelldescent;

TEST_CASE("factor: worked examples") {
    Factorization f = factor(Int(205));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::make_pair(Int(5), 1u));
    CHECK(f.factors[1] == std::make_pair(Int(41), 1u));

    CHECK(factor(Int(1)).factors.empty());

    Factorization g = factor(Int(12369));
    std::vector<std::pair<Int, unsigned>> want{{Int(3), 1u}, {Int(7), 1u}, {Int(19), 1u}, {Int(31), 1u}};
    CHECK(g.factors == want);
}

TEST_CASE("factor: recomposition on random sample up to 1e6") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Int n(1 + long(rng() % 1000000));
        Factorization f = factor(n);
        Int prod(1);
        Int prev(1);
        for (const auto& [p, e] : f.factors) {
            CHECK(p > prev);  // strictly increasing
            CHECK(is_prime(p));
            prev = p;
            for (unsigned k = 0; k < e; ++k) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("factor: deterministic and budget-limited") {
    // same input, same output
    CHECK(factor(Int("600851475143")).factors == factor(Int("600851475143")).factors);
    // an RSA-style composite must raise, not lie
    FactorBudget tiny;
    tiny.trial_limit = 100;
    tiny.rho_rounds = 1;
    tiny.rho_iterations = 10;
    Int hard("1522605027922533360535618378132637429718068114961380688657908494580122963258952897654000350692006139");
    CHECK_THROWS_AS(factor(hard, tiny), BudgetExceeded);
}

TEST_CASE("is_prime: deterministic Miller-Rabin") {
    CHECK(is_prime(Int(2)));
    CHECK(is_prime(Int(41)));
    CHECK(is_prime(Int(109)));
    CHECK_FALSE(is_prime(Int(1)));
    CHECK_FALSE(is_prime(Int(561)));        // Carmichael
    CHECK_FALSE(is_prime(Int(3215031751))); // strong pseudoprime to bases 2,3,5,7
    CHECK(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
    for (long n = 2; n < 2000; ++n) {
        bool naive = true;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) naive = false;
        CHECK(is_prime(Int(n)) == naive);
    }
}

TEST_CASE("squarefree_decompose: examples and invariants") {
    SquarefreeParts p = squarefree_decompose(Int(45));
    CHECK(p.core == 5);
    CHECK(p.cofactor == 3);
    p = squarefree_decompose(Int(1));
    CHECK(p.core == 1);
    CHECK(p.cofactor == 1);
    p = squarefree_decompose(Int(-12));
    CHECK(p.core == -3);
    CHECK(p.cofactor == 2);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Int n(long(rng() % 100000) + 2);
        auto [core, cof] = squarefree_decompose(n);
        CHECK(core * cof * cof == n);
        CHECK(factor(abs(core)).is_squarefree());
    }
    CHECK_THROWS_AS(squarefree_decompose(Int(0)), ContractViolation);
}

TEST_CASE("kronecker: examples, reciprocity sample, multiplicativity") {
    CHECK(kronecker(Int(5), Int(41)) == 1);  // 13^2 = 169 = 5 mod 41
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        Int a(long(rng() % 2000) - 1000);
        CHECK(kronecker(a, Int(1)) == 1);
    }
    CHECK(kronecker(Int(3), Int(7)) * kronecker(Int(7), Int(3)) == -1);

    // exhaustive against Legendre for odd primes
    for (long p : {3L, 5L, 7L, 11L, 13L, 41L, 97L}) {
        for (long a = -p; a <= p; ++a)
            CHECK(kronecker(Int(a), Int(p)) == oracles::slow_legendre(a, p));
    }

    // multiplicativity in the numerator on coprime-to-n inputs
    for (int i = 0; i < 300; ++i) {
        Int a(long(rng() % 4000) - 2000), b(long(rng() % 4000) - 2000), n(long(rng() % 2000) - 1000);
        if (a == 0 || b == 0 || n == 0) continue;
        if (gcd(Int(a * b), n) != 1) continue;
        CHECK(kronecker(Int(a * b), n) == kronecker(a, n) * kronecker(b, n));
    }

    // against GMP's implementation (independent library oracle)
    for (int i = 0; i < 2000; ++i) {
        Int a(long(rng() % 20000) - 10000), n(long(rng() % 20000) - 10000);
        CHECK(kronecker(a, n) == mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()));
    }
}

TEST_CASE("quartic_symbol: examples, domain errors, fourth-power law") {
    CHECK(quartic_symbol(Int(2), Int(17)) == -1);  // 2 is a QR, not a 4th power
    CHECK(quartic_symbol(Int(1), Int(13)) == 1);
    CHECK(quartic_symbol(Int(17), Int(2)) == 1);   // (-1)^((17-1)/8)

    CHECK_THROWS_AS(quartic_symbol(Int(3), Int(7)), DomainError);   // 7 = 3 mod 4
    CHECK_THROWS_AS(quartic_symbol(Int(2), Int(5)), DomainError);   // 2 not a QR mod 5
    CHECK_THROWS_AS(quartic_symbol(Int(3), Int(2)), DomainError);   // 3 != 1 mod 8

    for (long p : {5L, 13L, 17L, 29L, 37L, 41L, 97L, 113L, 401L, 449L}) {
        for (long a = 1; a < p; ++a) {
            if (oracles::slow_legendre(a, p) != 1) continue;
            int s = quartic_symbol(Int(a), Int(p));
            CHECK(s * s == 1);
            CHECK((s == 1) == oracles::is_fourth_power_mod(a, p));
        }
    }
    // multiplicative denominator: (a/pq)_4 = (a/p)_4 (a/q)_4
    CHECK(quartic_symbol(Int(16), Int(5 * 13)) ==
          quartic_symbol(Int(16), Int(5)) * quartic_symbol(Int(16), Int(13)));
}

TEST_CASE("hilbert: fixed values and the product formula") {
    CHECK(hilbert(Int(-1), Int(-1), Place::infinity()) == -1);
    CHECK(hilbert(Int(5), Int(205), Place::odd_prime(Int(41))) == 1);

    // product over {oo, 2, 3, 5} for (2, 15)
    int prod = 1;
    for (const Place& v : places_dividing(Int(30))) prod *= hilbert(Int(2), Int(15), v);
    CHECK(prod == 1);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        Int a(long(rng() % 6000) - 3000), b(long(rng() % 6000) - 3000);
        if (a == 0 || b == 0) continue;
        int pr = 1;
        for (const Place& v : places_dividing(Int(a * b))) pr *= hilbert(a, b, v);
        CHECK(pr == 1);
    }

    // local solvability of z^2 = ax^2 + by^2 over Z/p^3, brute, vs the symbol
    for (long p : {3L, 5L, 7L}) {
        long mod = p * p * p;
        std::vector<char> is_sq(mod, 0);
        for (long z = 0; z < mod; ++z) is_sq[z * z % mod] = 1;
        for (long a : {-6L, -2L, -1L, 2L, 3L, 5L, 10L}) {
            for (long b : {-5L, -3L, 1L, 6L, 7L}) {
                bool found = false;
                for (long x = 0; x < mod && !found; ++x)
                    for (long y = 0; y < mod && !found; ++y) {
                        if (x % p == 0 && y % p == 0) continue;
                        long rhs = ((a * x * x + b * y * y) % mod + mod) % mod;
                        if (is_sq[rhs]) found = true;
                    }
                CHECK(found == (hilbert(Int(a), Int(b), Place::odd_prime(Int(p))) == 1));
            }
        }
    }
}

TEST_CASE("supported_core strips exactly the supported primes") {
    std::vector<Int> sup{Int(2), Int(5), Int(41)};
    CHECK(supported_core(Int(45), sup) == 5);
    CHECK(supported_core(Int(-205 * 9), sup) == -205);
    CHECK(supported_core(Int(49), sup) == 1);
    CHECK_THROWS_AS(supported_core(Int(3), sup), ContractViolation);
}
