#include "pelldescent/heights.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "real.hpp"

namespace pelldescent {

using detail::Real;

namespace {
const double kLog4 = std::log(4.0);
}

Int naive_height(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    Int num = abs(c.get_num());
    Int den = c.get_den();
    return std::max(num, den);
}

Int naive_height(const ConicPoint& p) {
    Int rx = abs(p.rx());
    return std::max(rx, p.den());
}

HeightValue log_height(const ConicPoint& p) {
    HeightValue h;
    h.method = HeightValue::Method::Naive;
    h.value = Real::log_of(naive_height(p)).to_double();
    h.error_bound = 1e-30;  // 128-bit rounding only
    return h;
}

ConicPoint double_point_raw(const ConicPoint& p);  // conic.cpp

HeightValue canonical_height_limit(const PellConic& c, const ConicPoint& p, unsigned iterations,
                                   const HeightBudget& budget) {
    (void)c;
    if (iterations < 1) throw ContractViolation("canonical_height_limit: iterations >= 1");
    ConicPoint q = p;
    unsigned n = 0;
    while (n < iterations) {
        if (mpz_sizeinbase(q.rx().get_mpz_t(), 2) > budget.max_bits) break;
        q = double_point_raw(q);
        ++n;
    }
    HeightValue h;
    h.method = HeightValue::Method::Limit;
    h.iterations = n;
    h.value = std::ldexp(Real::log_of(naive_height(q)).to_double(), -int(n));
    h.error_bound = std::ldexp(kLog4, -int(n)) + 1e-30;
    return h;
}

HeightValue canonical_height_closed(const PellConic& c, const ConicPoint& p) {
    HeightValue h;
    h.method = HeightValue::Method::Closed;
    h.error_bound = 1e-30;
    if (c.delta() > 0) {
        Real v = (Real(abs(p.rx())) + Real(abs(p.sy())) * Real(c.delta()).sqrt()) / Real(2.0);
        h.value = v.log().to_double();
    } else {
        h.value = Real::log_of(p.den()).to_double();
    }
    return h;
}

bool HeightAxiomReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& a) { return a.passed; });
}

HeightAxiomReport height_axiom_report(const PellConic& c, const ConicPoint& p,
                                      const ConicPoint& q, double tol) {
    HeightAxiomReport rep;
    auto h = [&](const ConicPoint& pt) { return canonical_height_closed(c, pt).value; };
    auto push = [&](std::string name, bool ok, double lhs, double rhs) {
        rep.checks.push_back({std::move(name), ok, lhs, rhs});
    };

    double hp = h(p), hq = h(q);

    // (1) h vanishes exactly on torsion
    bool tors = is_torsion(c, p);
    push("torsion-vanishing", (hp <= tol) == tors, hp, tors ? 0.0 : 1.0);

    // (2) h(2P) = 2h(P)
    double h2p = h(double_point(c, p));
    push("doubling", std::abs(h2p - 2 * hp) <= tol, h2p, 2 * hp);

    ConicPoint sum = add(c, p, q);
    ConicPoint diff = add(c, p, negate(c, q));
    double hs = h(sum), hd = h(diff);

    // (3) h(P+Q) <= h(P) + h(Q)
    push("subadditive", hs <= hp + hq + tol, hs, hp + hq);

    // (4) h(P)+h(Q) <= h(P-Q)+h(P+Q) <= 2h(P)+2h(Q)
    push("double-inequality-lower", hp + hq <= hd + hs + tol, hp + hq, hd + hs);
    push("double-inequality-upper", hd + hs <= 2 * hp + 2 * hq + tol, hd + hs, 2 * (hp + hq));

    // (5) parallelogram equality on the squares
    double lhs5 = hd * hd + hs * hs, rhs5 = 2 * hp * hp + 2 * hq * hq;
    push("parallelogram", std::abs(lhs5 - rhs5) <= tol, lhs5, rhs5);

    // h(mP) = m h(P), m <= 8
    for (int m = 2; m <= 8; ++m) {
        double hm = h(scalar_multiple(c, p, Int(m)));
        push("multiple-" + std::to_string(m), std::abs(hm - m * hp) <= tol * m, hm, m * hp);
    }

    // naive sandwich, exact: H(P)^2 <= 4 H(2P) and H(2P) <= 4 H(P)^2
    Int HP = naive_height(p), H2P = naive_height(double_point(c, p));
    push("naive-sandwich-lower", HP * HP <= 4 * H2P, 0, 0);
    push("naive-sandwich-upper", H2P <= 4 * HP * HP, 0, 0);
    return rep;
}

DescendantHeightBound descendant_height_bound(const PellConic& c, const DescendantPoint& p) {
    DescendantHeightBound out;
    out.height_descendant = naive_height(p.r);
    out.height_lift = naive_height(lift_to_conic(c, p));
    const Int& a = p.host.a;
    Int h2 = out.height_descendant * out.height_descendant;
    out.lower_ok = h2 <= 4 * a * out.height_lift;
    out.upper_ok = out.height_lift <= 4 * a * h2;
    return out;
}

MordellWeilResult mordell_weil_generators(const PellConic& c, unsigned long enumeration_cap) {
    MordellWeilResult res;
    // torsion generator
    if (c.delta() == -3)
        res.torsion_basis.push_back(c.point(Int(1), Int(1)));
    else if (c.delta() == -4)
        res.torsion_basis.push_back(c.point(Int(0), Int(1)));
    else
        res.torsion_basis.push_back(c.point(Int(-2), Int(0)));

    if (c.delta() < 0) {
        res.enumeration_complete = true;
        return res;  // all torsion
    }

    // Coset representatives of C(Z)/2C(Z): one integral point per class of im alpha.
    ConicPoint p1 = fundamental_point(c);
    ConicPoint t = c.point(Int(-2), Int(0));
    res.coset_representatives = {c.neutral(), t, p1, add(c, p1, t)};
    double bound = 0;
    for (const ConicPoint& g : res.coset_representatives)
        bound = std::max(bound, canonical_height_closed(c, g).value);
    res.height_bound = bound;

    // Integral points of height <= c are exactly those with |y| <= y(P1);
    // sweep y when feasible, otherwise fall back to Gamma alone.
    std::vector<ConicPoint> generating = res.coset_representatives;
    Int ymax = abs(p1.sy());
    if (ymax <= (long)enumeration_cap) {
        res.enumeration_complete = true;
        for (Int y = 0; y <= ymax; ++y) {
            Int t4 = c.delta() * y * y + 4;
            if (t4 < 0 || !is_perfect_square(t4)) continue;
            Int x = isqrt_exact(t4);
            for (const Int& xx : {x, Int(-x)}) {
                generating.push_back(c.point(xx, y));
                if (y != 0) generating.push_back(c.point(xx, Int(-y)));
                if (x == 0) break;
            }
        }
    }

    // Reduction: the minimal-height non-torsion element generates the free part;
    // verify every member of the generating set is torsion + multiple of it.
    std::optional<ConicPoint> gen;
    double hgen = 0;
    for (const ConicPoint& g : generating) {
        if (is_torsion(c, g)) continue;
        double hg = canonical_height_closed(c, g).value;
        if (!gen || hg < hgen - 1e-12) {
            gen = g;
            hgen = hg;
        }
    }
    if (gen) {
        for (const ConicPoint& g : generating) {
            if (is_torsion(c, g)) continue;
            double k = canonical_height_closed(c, g).value / hgen;
            Int kk(long(std::llround(k)));
            ConicPoint rem = add(c, g, negate(c, scalar_multiple(c, *gen, kk)));
            if (!is_torsion(c, rem))
                throw ContractViolation("mordell_weil: generating set not generated by minimum");
        }
        // canonical sign: y > 0
        if (gen->sy() < 0) gen = negate(c, *gen);
        res.free_generators.push_back(*gen);
    }
    return res;
}

}  // namespace pelldescent
