#include "pelldescent/selmer.hpp"

#include <algorithm>
#include <cassert>

namespace pelldescent {

std::pair<bool, std::vector<LocalVerdict>> locally_solvable(const PellConic& c,
                                                            const Descendant& t) {
    if (c.delta() <= 0) throw DomainError("locally_solvable requires delta > 0");
    if (t.a <= 0 || t.a * t.b != c.delta())
        throw ContractViolation("locally_solvable: not a descendant of this conic");

    // Route 1: Legendre conditions of Prop. on first descendants.
    bool legendre_ok = true;
    for (const auto& [q, e] : factor(abs(t.b)).factors)
        if (q != 2 && kronecker(t.a, q) != 1) { legendre_ok = false; break; }
    if (legendre_ok)
        for (const auto& [p, e] : factor(abs(t.a)).factors)
            if (p != 2 && kronecker(Int(-t.b), p) != 1) { legendre_ok = false; break; }

    // Route 2: Hilbert symbols at every place of 2*delta*oo.
    std::vector<LocalVerdict> verdicts;
    bool hilbert_ok = true;
    for (const Place& v : places_dividing(c.delta())) {
        int s = hilbert(t.a, c.delta(), v);
        verdicts.push_back({v, s == 1, s});
        if (s != 1) hilbert_ok = false;
    }

    if (legendre_ok != hilbert_ok)
        throw ContractViolation("local solvability routes disagree at a = " + t.a.get_str() +
                                ", delta = " + c.delta().get_str());
    return {hilbert_ok, verdicts};
}

TwoGroup selmer_group(const PellConic& c) {
    if (c.delta() <= 0) throw DomainError("selmer_group requires delta > 0");
    std::vector<SquareClass> gens;
    for (const Descendant& t : enumerate_descendants(c))
        if (locally_solvable(c, t).first) gens.push_back(SquareClass::from_squarefree(t.a));
    return TwoGroup::span(gens);
}

ShaResult sha2(const PellConic& c) {
    if (c.delta() <= 0) throw DomainError("sha2 requires delta > 0");
    TwoGroup sel = selmer_group(c);
    TwoGroup w2 = integral_class_group(c);
    ShaResult out;
    out.order = sel.order() / w2.order();
    for (const Descendant& t : enumerate_descendants(c)) {
        if (!locally_solvable(c, t).first) continue;
        SquareClass cls = SquareClass::from_squarefree(t.a);
        if (!w2.contains(cls)) out.representatives.push_back(t);
    }
    return out;
}

std::optional<DescendantPoint> rational_witness(const PellConic& c, const Descendant& t,
                                                const WitnessOptions& opts) {
    // Solve a p^2 - b q^2 = 4 n^2 over integers, denominator-ascending; Holzer's
    // bound keeps the caps small for desk-scale delta.
    Int sqd;
    Int dabs = abs(c.delta());
    mpz_sqrt(sqd.get_mpz_t(), dabs.get_mpz_t());
    unsigned long ncap = opts.denominator_cap
                             ? opts.denominator_cap
                             : 2 * (mpz_get_ui(sqd.get_mpz_t()) + 1);
    Int sqa;
    mpz_sqrt(sqa.get_mpz_t(), t.a.get_mpz_t());
    unsigned long qcap = opts.numerator_multiplier * (mpz_get_ui(sqa.get_mpz_t()) + 1);
    for (unsigned long n = 1; n <= ncap; ++n) {
        for (unsigned long q = 0; q <= qcap; ++q) {
            Int rhs = 4 * Int(n) * Int(n) + t.b * Int(q) * Int(q);
            if (rhs <= 0) continue;
            if (!mpz_divisible_p(rhs.get_mpz_t(), t.a.get_mpz_t())) continue;
            Int p2 = rhs / t.a;
            if (!is_perfect_square(p2)) continue;
            Int p = isqrt_exact(p2);
            if (p == 0 && q == 0) continue;
            return descendant_point(t, Rat(p, Int(n)), Rat(Int(q), Int(n)));
        }
    }
    return std::nullopt;
}

namespace {

// Integral points on T_a for delta < 0: a r^2 + |b| s^2 = 4, all coords tiny.
std::optional<std::pair<Int, Int>> negative_delta_integral_point(const Descendant& t) {
    for (Int r = 0; t.a * r * r <= 4; ++r) {
        Int rem = 4 - t.a * r * r;
        Int babs = abs(t.b);
        if (rem == 0) return std::make_pair(r, Int(0));
        if (mpz_divisible_p(rem.get_mpz_t(), babs.get_mpz_t()) &&
            is_perfect_square(Int(rem / babs)))
            return std::make_pair(r, isqrt_exact(Int(rem / babs)));
    }
    return std::nullopt;
}

}  // namespace

SelmerReport analyze_descendants(const PellConic& c, const WitnessOptions& opts) {
    SelmerReport rep;
    rep.disc = c.disc();
    std::vector<Descendant> all = enumerate_descendants(c);

    if (c.delta() < 0) {
        // Finite case: descend rows by direct enumeration, groups from torsion.
        rep.selmer = TwoGroup::span({});
        rep.w2 = TwoGroup::span({});
        rep.sha_order = 1;
        std::vector<SquareClass> gens;
        for (const Descendant& t : all) {
            DescendantRow row{t, false, {}, std::nullopt, std::nullopt};
            if (auto pt = negative_delta_integral_point(t)) {
                row.solvable_everywhere = true;
                row.integral_point = pt;
                gens.push_back(SquareClass::from_squarefree(t.a));
            }
            rep.rows.push_back(std::move(row));
        }
        rep.selmer = TwoGroup::span(gens);
        rep.w2 = rep.selmer;
        return rep;
    }

    rep.selmer = selmer_group(c);
    rep.w2 = integral_class_group(c);
    rep.sha_order = rep.selmer.order() / rep.w2.order();

    // The two W_2 classes carry explicit integral points: (2,0) on T_1 and the
    // classification of the fundamental point on T_{a*}.
    ConicPoint p1 = fundamental_point(c);
    IntegralClassification cls1 = classify_integral_point(c, p1);

    for (const Descendant& t : all) {
        DescendantRow row{t, false, {}, std::nullopt, std::nullopt};
        auto [ok, verdicts] = locally_solvable(c, t);
        row.solvable_everywhere = ok;
        row.verdicts = std::move(verdicts);
        if (ok) {
            if (t.a == 1)
                row.integral_point = std::make_pair(Int(2), Int(0));
            else if (t.a == cls1.host.a)
                row.integral_point = std::make_pair(cls1.r, cls1.s);
            if (!row.integral_point) row.witness = rational_witness(c, t, opts);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

RedeiMatrix redei_matrix(const PellConic& c) {
    const Int& delta = c.delta();
    if (delta <= 0 || mpz_even_p(delta.get_mpz_t()))
        throw DomainError("not a product of positive prime discriminants: delta = " +
                          delta.get_str());
    RedeiMatrix m;
    for (const Int& p : c.disc().delta_factors.primes()) {
        m.primes.push_back(p);
        m.prime_discriminants.push_back(mod_floor(p, 4) == 1 ? p : Int(-p));
    }
    std::size_t t = m.primes.size();
    assert(t <= 64);
    m.rows.assign(t, 0);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            if (i == j) continue;
            if (kronecker(m.prime_discriminants[i], m.primes[j]) != 1)
                m.rows[i] ^= std::uint64_t(1) << j;
        }
    // diagonal: every column sums to zero
    for (std::size_t j = 0; j < t; ++j) {
        int sum = 0;
        for (std::size_t i = 0; i < t; ++i) sum ^= int((m.rows[i] >> j) & 1);
        if (sum) m.rows[j] ^= std::uint64_t(1) << j;
    }
    // rank over F2
    std::vector<std::uint64_t> work = m.rows;
    unsigned rank = 0;
    for (int bit = int(t) - 1; bit >= 0; --bit) {
        std::size_t piv = work.size();
        for (std::size_t k = 0; k < work.size(); ++k)
            if ((work[k] >> bit) & 1) { piv = k; break; }
        if (piv == work.size()) continue;
        std::uint64_t row = work[piv];
        work.erase(work.begin() + piv);
        for (auto& w : work)
            if ((w >> bit) & 1) w ^= row;
        ++rank;
    }
    m.rank = rank;
    return m;
}

RedeiCheck redei_check(const PellConic& c) {
    RedeiCheck out{0, false, redei_matrix(c)};
    out.e4 = unsigned(out.matrix.primes.size()) - 1 - out.matrix.rank;
    out.consistent = selmer_group(c).order() == (Int(1) << (out.e4 + 1));
    return out;
}

bool splitting_second_kind(const Int& delta, const Int& delta1, const FactorBudget& budget) {
    if (delta1 == 0 || !mpz_divisible_p(delta.get_mpz_t(), delta1.get_mpz_t()))
        throw DomainError("splitting: delta1 must divide delta");
    Int delta2 = delta / delta1;
    auto disc_shaped = [](const Int& d) {
        unsigned long m = mpz_fdiv_ui(d.get_mpz_t(), 4);
        return m == 0 || m == 1;
    };
    if (!disc_shaped(delta1) || !disc_shaped(delta2))
        throw DomainError("splitting: factors are not discriminants");
    for (const auto& [p, e] : factor(abs(delta2), budget).factors)
        if (kronecker(delta1, p) != 1) return false;
    for (const auto& [p, e] : factor(abs(delta1), budget).factors)
        if (kronecker(delta2, p) != 1) return false;
    return true;
}

}  // namespace pelldescent
