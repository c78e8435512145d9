#include "pelldescent/descent.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace pelldescent {

SquareClass SquareClass::from_squarefree(Int rep) {
    if (rep == 0) throw ContractViolation("square class of 0");
    return SquareClass(std::move(rep));
}

SquareClass SquareClass::of_value(const Int& v, const FactorBudget& budget) {
    return SquareClass(squarefree_decompose(v, budget).core);
}

SquareClass SquareClass::of_rational(const Rat& q, const FactorBudget& budget) {
    Rat c = q;
    c.canonicalize();
    return of_value(Int(c.get_num() * c.get_den()), budget);
}

SquareClass SquareClass::of_supported(const Int& v, const std::vector<Int>& support) {
    return SquareClass(supported_core(v, support));
}

SquareClass SquareClass::times(const SquareClass& o) const {
    Int g = gcd(rep_, o.rep_);  // positive
    return SquareClass(rep_ / g * (o.rep_ / g));
}

DescendantPoint descendant_point(const Descendant& t, const Rat& r, const Rat& s) {
    Rat rr = r, ss = s;
    rr.canonicalize();
    ss.canonicalize();
    if (!t.on_curve(rr, ss))
        throw ContractViolation("(" + rr.get_str() + ", " + ss.get_str() + ") is not on " +
                                t.a.get_str() + " r^2 - " + t.b.get_str() + " s^2 = 4");
    return DescendantPoint{t, rr, ss};
}

namespace {

std::optional<std::uint64_t> class_mask(const SquareClass& c, std::vector<Int>& atoms,
                                        const FactorBudget& budget, bool grow) {
    std::uint64_t m = 0;
    auto set_atom = [&](const Int& a) -> bool {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == a) {
                m ^= std::uint64_t(1) << i;
                return true;
            }
        if (!grow) return false;
        if (atoms.size() >= 64) throw ContractViolation("TwoGroup: more than 64 atoms");
        atoms.push_back(a);
        m ^= std::uint64_t(1) << (atoms.size() - 1);
        return true;
    };
    if (c.rep() < 0 && !set_atom(Int(-1))) return std::nullopt;
    for (const auto& [p, e] : factor(abs(c.rep()), budget).factors) {
        assert(e == 1);
        if (!set_atom(p)) return std::nullopt;
    }
    return m;
}

std::uint64_t reduce_mask(std::uint64_t m, const std::vector<std::uint64_t>& rows) {
    // rows are kept sorted by leading (highest) bit, descending, pairwise distinct
    for (std::uint64_t r : rows) {
        std::uint64_t hi = std::uint64_t(1) << (63 - __builtin_clzll(r));
        if (m & hi) m ^= r;
    }
    return m;
}

}  // namespace

TwoGroup TwoGroup::span(const std::vector<SquareClass>& gens, const FactorBudget& budget) {
    TwoGroup g;
    for (const SquareClass& c : gens) {
        if (c.trivial()) continue;
        auto m = class_mask(c, g.atoms_, budget, /*grow=*/true);
        std::uint64_t red = reduce_mask(*m, g.reduced_);
        if (red == 0) continue;
        g.basis_.push_back(c);
        g.reduced_.push_back(red);
        // keep rows sorted by highest bit, descending, so reduce_mask is a sweep
        std::sort(g.reduced_.begin(), g.reduced_.end(), std::greater<>());
        // re-pair basis order with reduced order is unnecessary: reduced_ is only
        // used as a reduction set, basis_ keeps the original generators.
    }
    return g;
}

bool TwoGroup::contains(const SquareClass& c, const FactorBudget& budget) const {
    if (c.trivial()) return true;
    std::vector<Int> atoms = atoms_;
    auto m = class_mask(c, atoms, budget, /*grow=*/false);
    if (!m) return false;
    return reduce_mask(*m, reduced_) == 0;
}

std::vector<SquareClass> TwoGroup::elements() const {
    std::vector<SquareClass> out{SquareClass::from_squarefree(Int(1))};
    for (const SquareClass& b : basis_) {
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i].times(b));
    }
    std::sort(out.begin(), out.end(),
              [](const SquareClass& x, const SquareClass& y) { return x.rep() < y.rep(); });
    return out;
}

namespace {

std::vector<Int> delta_support(const PellConic& c) {
    std::vector<Int> support = c.disc().delta_factors.primes();
    if (std::find(support.begin(), support.end(), Int(2)) == support.end())
        support.push_back(Int(2));
    return support;
}

// class of a positive denominator: strip the delta-primes, then the leftover
// is either a square (doubling chains) or small enough to factor.
SquareClass denominator_class(const Int& n, const std::vector<Int>& support) {
    Int rest = n;
    Int stripped(1);
    for (const Int& p : support) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e & 1) stripped *= p;
    }
    SquareClass out = SquareClass::from_squarefree(stripped);
    if (is_perfect_square(rest)) return out;
    return out.times(SquareClass::of_value(rest));
}

}  // namespace

SquareClass weil_map(const PellConic& c, const ConicPoint& p) {
    std::vector<Int> support = delta_support(c);
    if (p.x() == -2) return SquareClass::of_supported(-c.delta(), support);
    // class of x+2 = (r + 2n)/n. The numerator r + 2n is delta-supported times
    // a square ((r+2n)(r-2n) = delta s^2 with gcd(r,n) = 1); the denominator
    // class is free and handled separately.
    SquareClass num = SquareClass::of_supported(Int(p.rx() + 2 * p.den()), support);
    return num.times(denominator_class(p.den(), support));
}

IntegralClassification classify_integral_point(const PellConic& c, const ConicPoint& p) {
    if (!p.is_integral()) throw ContractViolation("classify_integral_point: point not integral");
    const Int x = p.rx(), y = p.sy();
    if (x <= 0)
        throw DomainError("classify_integral_point: x = " + x.get_str() +
                          " <= 0; negate the point (T_a ~ T_{-delta/a}) first");
    if (x == 2) return {Descendant{Int(1), c.delta()}, Int(2), Int(0)};

    Int a = supported_core(x + 2, delta_support(c));
    assert(a > 0);
    Int r = isqrt_exact(Int((x + 2) / a));
    Int b = c.delta() / a;
    if (a * b != c.delta())
        throw ContractViolation("classify_integral_point: class does not divide delta");
    if (!mpz_divisible_p(y.get_mpz_t(), r.get_mpz_t()))
        throw ContractViolation("classify_integral_point: r does not divide y");
    Int s = y / r;
    if (a * r * r - b * s * s != 4)
        throw ContractViolation("classify_integral_point: descent identity failed");
    return {Descendant{a, b}, r, s};
}

ConicPoint lift_to_conic(const PellConic& c, const DescendantPoint& p) {
    if (!p.host.on_curve(p.r, p.s))
        throw ContractViolation("lift_to_conic: point not on descendant");
    Rat x = p.host.a * p.r * p.r - 2;
    Rat y = p.r * p.s;
    return c.point(x, y);
}

std::vector<Descendant> enumerate_descendants(const PellConic& c) {
    const Int& delta = c.delta();
    const Int& d = c.disc().d;
    std::vector<Int> avals{Int(1)};
    if (mpz_odd_p(delta.get_mpz_t())) {
        for (const Int& p : c.disc().delta_factors.primes()) {
            std::size_t n = avals.size();
            for (std::size_t i = 0; i < n; ++i) avals.push_back(avals[i] * p);
        }
    } else {
        // delta = 4d: squarefree divisors of |d|, plus the 2A branch for d = 3 mod 4
        Factorization fd = factor(abs(d));
        for (const Int& p : fd.primes()) {
            std::size_t n = avals.size();
            for (std::size_t i = 0; i < n; ++i) avals.push_back(avals[i] * p);
        }
        if (mod_floor(d, 4) == 3) {
            std::size_t n = avals.size();
            for (std::size_t i = 0; i < n; ++i) avals.push_back(2 * avals[i]);
        }
    }
    std::sort(avals.begin(), avals.end());
    std::vector<Descendant> out;
    out.reserve(avals.size());
    for (const Int& a : avals) out.push_back(Descendant{a, Int(delta / a)});
    return out;
}

Descendant compose(const PellConic& c, const Descendant& s, const Descendant& t) {
    Int g = gcd(s.a, t.a);
    Int prod = s.a / g * (t.a / g);  // squarefree core of s.a * t.a
    return Descendant{prod, Int(c.delta() / prod)};
}

TwoGroup weil_image(const PellConic& c) {
    std::vector<SquareClass> gens;
    std::vector<Int> support = delta_support(c);
    if (c.delta() > 0) {
        gens.push_back(SquareClass::of_supported(-c.delta(), support));
        gens.push_back(weil_map(c, fundamental_point(c)));
    } else {
        for (const ConicPoint& t : torsion_points(c)) gens.push_back(weil_map(c, t));
    }
    return TwoGroup::span(gens);
}

SquareClass positive_representative(const PellConic& c, const SquareClass& cls) {
    if (cls.rep() > 0) return cls;
    return cls.times(SquareClass::of_supported(-c.delta(), delta_support(c)));
}

TwoGroup integral_class_group(const PellConic& c) {
    if (c.delta() <= 0) throw DomainError("integral_class_group requires delta > 0");
    std::vector<SquareClass> gens;
    TwoGroup image = weil_image(c);
    for (const SquareClass& g : image.basis()) gens.push_back(positive_representative(c, g));
    return TwoGroup::span(gens);
}

}  // namespace pelldescent
