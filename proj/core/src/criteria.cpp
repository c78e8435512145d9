#include "pelldescent/criteria.hpp"

#include <cassert>

namespace pelldescent {

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::Solvable: return "solvable";
        case Conclusion::Unsolvable: return "unsolvable";
        default: return "undetermined";
    }
}

CriterionVerdict solvability_conditions(const PellConic& c, const Int& a) {
    for (const Int& p : c.disc().delta_factors.primes())
        if (mod_floor(p, 4) != 1)
            throw DomainError("out of theorem scope: prime " + p.get_str() +
                              " = 3 mod 4 divides delta");
    if (a <= 0 || !mpz_divisible_p(c.delta().get_mpz_t(), a.get_mpz_t()))
        throw ContractViolation("solvability_conditions: a must be a positive divisor of delta");
    Int b = c.delta() / a;

    CriterionVerdict v;
    for (const auto& [q, e] : factor(b).factors) {
        int s = kronecker(a, q);
        v.symbols.emplace_back("(" + a.get_str() + "/" + q.get_str() + ")", s);
        if (s != 1) {
            v.conclusion = Conclusion::Unsolvable;
            v.rule = "quadratic (a/q)";
            return v;
        }
    }
    for (const auto& [p, e] : factor(a).factors) {
        int s = kronecker(b, p);
        v.symbols.emplace_back("(" + b.get_str() + "/" + p.get_str() + ")", s);
        if (s != 1) {
            v.conclusion = Conclusion::Unsolvable;
            v.rule = "quadratic (b/p)";
            return v;
        }
    }
    // (b/a)_4 is defined once condition (2) holds
    int s4 = quartic_symbol(b, a);
    v.symbols.emplace_back("(" + b.get_str() + "/" + a.get_str() + ")_4", s4);
    if (s4 != 1) {
        v.conclusion = Conclusion::Unsolvable;
        v.rule = "quartic (b/a)_4";
        return v;
    }
    v.conclusion = Conclusion::Undetermined;
    v.rule = "all necessary conditions hold";
    return v;
}

namespace {

void require_scholz_primes(const Int& p, const Int& q) {
    if (p == q || !is_prime(p) || !is_prime(q) || mod_floor(p, 4) != 1 || mod_floor(q, 4) != 1)
        throw DomainError("requires distinct primes p = q = 1 mod 4");
}

}  // namespace

ScholzReport scholz_classify(const Int& p, const Int& q) {
    require_scholz_primes(p, q);
    ScholzReport rep;
    rep.p = p;
    rep.q = q;
    rep.legendre = kronecker(p, q);
    rep.guaranteed_a = 0;
    rep.sha_element_a = 0;
    if (rep.legendre == 1) {
        rep.p4 = quartic_symbol(p, q);
        rep.q4 = quartic_symbol(q, p);
        if (*rep.p4 == -1 && *rep.q4 == 1) rep.guaranteed_a = p;
        if (*rep.p4 == 1 && *rep.q4 == -1) rep.guaranteed_a = q;
        if (*rep.p4 == -1 && *rep.q4 == -1) rep.guaranteed_a = p * q;
        // Mixed quartic symbols: the guaranteed descendant carries the
        // fundamental point, the other single-prime descendant is locally
        // solvable with no integral point — an element of order 2 in Sha.
        if (*rep.p4 == 1 && *rep.q4 == -1) rep.sha_element_a = p;
        if (*rep.p4 == -1 && *rep.q4 == 1) rep.sha_element_a = q;
    } else {
        rep.guaranteed_a = p * q;  // negative Pell solvable
    }

    auto sym = [](const Int& u, const Int& v) {
        return "(" + u.get_str() + "/" + v.get_str() + ")_4 = 1";
    };
    Int pq = p * q;
    rep.table.push_back({Int(1), "X^2 - " + pq.get_str() + " Y^2 = 1", "none", true});
    rep.table.push_back({p, p.get_str() + " X^2 - " + q.get_str() + " Y^2 = 1", sym(q, p),
                         rep.q4 ? std::optional<bool>(*rep.q4 == 1) : std::nullopt});
    rep.table.push_back({q, q.get_str() + " X^2 - " + p.get_str() + " Y^2 = 1", sym(p, q),
                         rep.p4 ? std::optional<bool>(*rep.p4 == 1) : std::nullopt});
    rep.table.push_back({pq, pq.get_str() + " X^2 - Y^2 = 1",
                         "(" + p.get_str() + "/" + q.get_str() + ")_4 (" + q.get_str() + "/" +
                             p.get_str() + ")_4 = 1",
                         rep.p4 ? std::optional<bool>(*rep.p4 * *rep.q4 == 1) : std::nullopt});
    return rep;
}

CriterionVerdict negative_pell(const Int& p, const Int& q) {
    require_scholz_primes(p, q);
    CriterionVerdict v;
    int leg = kronecker(p, q);
    v.symbols.emplace_back("(" + p.get_str() + "/" + q.get_str() + ")", leg);
    if (leg == -1) {
        v.conclusion = Conclusion::Solvable;
        v.rule = "single-prime descendants excluded by (p/q) = -1";
        return v;
    }
    int p4 = quartic_symbol(p, q), q4 = quartic_symbol(q, p);
    v.symbols.emplace_back("(" + p.get_str() + "/" + q.get_str() + ")_4", p4);
    v.symbols.emplace_back("(" + q.get_str() + "/" + p.get_str() + ")_4", q4);
    if (p4 == -1 && q4 == -1) {
        v.conclusion = Conclusion::Solvable;
        v.rule = "quartic symbols exclude T_p, T_q, T_pq";
        return v;
    }
    if (p4 != q4) {
        v.conclusion = Conclusion::Unsolvable;
        v.rule = "(p/q)_4 != (q/p)_4 obstructs T_pq; the passing single-prime "
                 "descendant carries the fundamental solution";
        return v;
    }
    v.conclusion = Conclusion::Undetermined;
    v.rule = "all necessary conditions hold for T_p, T_q and T_pq";
    return v;
}

bool negative_pell_parity_oracle(const Int& d) {
    if (d <= 0) throw ContractViolation("parity oracle: d > 0 required");
    Int a0;
    mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
    if (a0 * a0 == d) throw DomainError("parity oracle: d is a square");
    Int P(0), Q(1), a = a0;
    unsigned long len = 0;
    Int two_a0 = 2 * a0;
    while (true) {
        P = a * Q - P;
        Q = (d - P * P) / Q;
        a = (a0 + P) / Q;
        ++len;
        if (Q == 1 && a == two_a0) return (len % 2) == 1;
        if (len > 10'000'000) throw BudgetExceeded("continued fraction did not close");
    }
}

std::vector<RichaudDegertForm> richaud_degert_solutions(const PellConic& c) {
    if (c.delta() <= 0) throw DomainError("richaud_degert_solutions requires delta > 0");
    std::vector<RichaudDegertForm> out;
    auto emit = [&](const Int& a, char coord, const Int& cv, const Int& other, const Int& n,
                    const Int& rem) {
        // delta = n^2 + rem with rem | 4n certifies the Richaud-Degert shape
        assert(c.delta() == n * n + rem);
        assert(rem != 0 && mpz_divisible_p(Int(4 * n).get_mpz_t(), rem.get_mpz_t()));
        out.push_back({a, coord, cv, other, n, rem});
    };
    for (const Descendant& t : enumerate_descendants(c)) {
        const Int &a = t.a, &b = t.b;
        // s = 1: a r^2 = 4 + b  ->  delta = (ar)^2 - 4a
        Int num = 4 + b;
        if (mpz_divisible_p(num.get_mpz_t(), a.get_mpz_t()) && is_perfect_square(Int(num / a))) {
            Int r = isqrt_exact(Int(num / a));
            if (r > 0) emit(a, 's', Int(1), r, Int(a * r), Int(-4 * a));
        }
        // s = 2: a r^2 = 4 + 4b, r = 2m  ->  delta = (am)^2 - a
        num = 4 + 4 * b;
        if (mpz_divisible_p(num.get_mpz_t(), a.get_mpz_t()) && is_perfect_square(Int(num / a))) {
            Int r = isqrt_exact(Int(num / a));
            if (r > 0 && mpz_even_p(r.get_mpz_t())) emit(a, 's', Int(2), r, Int(a * r / 2), Int(-a));
        }
        // r = 1: b s^2 = a - 4  ->  delta = (bs)^2 + 4b
        num = a - 4;
        if (num > 0 && mpz_divisible_p(num.get_mpz_t(), b.get_mpz_t()) &&
            is_perfect_square(Int(num / b))) {
            Int s = isqrt_exact(Int(num / b));
            if (s > 0) emit(a, 'r', Int(1), s, Int(b * s), Int(4 * b));
        }
        // r = 2: b s^2 = 4a - 4, s = 2m  ->  delta = (bm)^2 + b
        num = 4 * a - 4;
        if (num > 0 && mpz_divisible_p(num.get_mpz_t(), b.get_mpz_t()) &&
            is_perfect_square(Int(num / b))) {
            Int s = isqrt_exact(Int(num / b));
            if (s > 0 && mpz_even_p(s.get_mpz_t())) emit(a, 'r', Int(2), s, Int(b * s / 2), b);
        }
    }
    return out;
}

}  // namespace pelldescent
