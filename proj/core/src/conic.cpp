#include "pelldescent/conic.hpp"

#include <cassert>

namespace pelldescent {

Discriminant normalize_discriminant(const Int& d_in, const FactorBudget& budget) {
    if (d_in == 0) throw DomainError("degenerate conic: discriminant 0");
    SquarefreeParts parts = squarefree_decompose(d_in, budget);
    if (parts.core == 1) throw DomainError("degenerate conic: " + d_in.get_str() + " is a square");
    Discriminant out;
    out.d = parts.core;
    out.delta = (mod_floor(parts.core, 4) == 1) ? parts.core : 4 * parts.core;
    out.delta_factors = factor(abs(out.delta), budget);
    return out;
}

bool PellConic::on_curve(const Rat& x, const Rat& y) const {
    return x * x - disc_.delta * y * y == 4;
}

ConicPoint::ConicPoint(const PellConic& c, const Rat& x, const Rat& y) {
    Rat xx = canonical(x), yy = canonical(y);
    if (!c.on_curve(xx, yy))
        throw ContractViolation("point (" + xx.get_str() + ", " + yy.get_str() +
                                ") is not on X^2 - " + c.delta().get_str() + " Y^2 = 4");
    // shared-denominator lemma: reduced denominators of x and y coincide
    r_ = xx.get_num();
    s_ = yy.get_num();
    n_ = xx.get_den();
    if (yy.get_den() != n_)
        throw ContractViolation("point coordinates do not share a denominator");
}

ConicPoint add(const PellConic& c, const ConicPoint& p, const ConicPoint& q) {
    Rat x1 = p.x(), y1 = p.y(), x2 = q.x(), y2 = q.y();
    Rat x3 = (x1 * x2 + c.delta() * y1 * y2) / 2;
    Rat y3 = (x1 * y2 + y1 * x2) / 2;
    return ConicPoint(c, x3, y3);
}

ConicPoint negate(const PellConic& c, const ConicPoint& p) {
    return ConicPoint(c, p.x(), -p.y());
}

ConicPoint double_point(const PellConic& c, const ConicPoint& p) {
    Rat x = p.x(), y = p.y();
    return ConicPoint(c, x * x - 2, x * y);
}

// Division-free doubling: (r, s, n) -> (r^2 - 2n^2, rs, n^2) is already in
// lowest terms when gcd(r,n) = gcd(s,n) = 1. Used by the height limit.
ConicPoint double_point_raw(const ConicPoint& p) {
    return ConicPoint(p.r_ * p.r_ - 2 * p.n_ * p.n_, p.r_ * p.s_, p.n_ * p.n_);
}

ConicPoint scalar_multiple(const PellConic& c, const ConicPoint& p, const Int& k) {
    if (k == 0) return c.neutral();
    ConicPoint base = k < 0 ? negate(c, p) : p;
    Int m = abs(k);
    ConicPoint acc = c.neutral();
    ConicPoint sq = base;
    while (m > 0) {
        if (mpz_odd_p(m.get_mpz_t())) acc = add(c, acc, sq);
        m >>= 1;
        if (m > 0) sq = double_point(c, sq);
    }
    return acc;
}

namespace {

// Rational square root: both numerator and denominator must be squares.
std::optional<Rat> rational_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (!is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den())) return std::nullopt;
    return Rat(isqrt_exact(q.get_num()), isqrt_exact(q.get_den()));
}

}  // namespace

std::vector<ConicPoint> halve(const PellConic& c, const ConicPoint& p) {
    std::vector<ConicPoint> out;
    Rat px = p.x(), py = p.y();
    if (px == -2) {
        // 2(0, y) = (-2, 0); rational iff -delta is a square (only delta = -4).
        Int md = -c.delta();
        if (md > 0 && is_perfect_square(md)) {
            Rat y0(2, isqrt_exact(md));
            out.emplace_back(c, Rat(0), y0);
            out.emplace_back(c, Rat(0), -y0);
        }
        return out;
    }
    auto x0 = rational_sqrt(px + 2);
    if (!x0) return out;
    for (const Rat& x : {*x0, Rat(-*x0)}) {
        Rat y = py / x;  // x != 0 since px != -2
        out.emplace_back(c, x, y);
    }
    return out;
}

std::vector<ConicPoint> torsion_points(const PellConic& c) {
    std::vector<ConicPoint> out;
    out.push_back(c.point(Int(2), Int(0)));
    out.push_back(c.point(Int(-2), Int(0)));
    if (c.delta() == -3) {
        for (int x : {1, -1})
            for (int y : {1, -1}) out.push_back(c.point(Int(x), Int(y)));
    } else if (c.delta() == -4) {
        out.push_back(c.point(Int(0), Int(1)));
        out.push_back(c.point(Int(0), Int(-1)));
    }
    return out;
}

bool is_torsion(const PellConic& c, const ConicPoint& p) {
    for (const ConicPoint& t : torsion_points(c))
        if (p == t) return true;
    return false;
}

FundamentalUnit fundamental_unit(const PellConic& c) {
    const Int& D = c.delta();
    if (D <= 0) throw DomainError("fundamental_unit requires delta > 0");
    // PQa on (P0 + sqrt(D))/Q0 with P0 = D mod 2, Q0 = 2.  The invariant
    // G_i^2 - D B_i^2 = (-1)^(i+1) Q0 Q_(i+1) means |.| = 4 exactly at Q = 2,
    // and the first hit is the fundamental unit.
    const Int P0 = mpz_odd_p(D.get_mpz_t()) ? 1 : 0;
    Int sq;
    mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
    Int P = P0, Q = 2;
    Int Am2(0), Am1(1), Bm2(1), Bm1(0);
    for (int i = 0; i < 1000000; ++i) {
        // floor((P + sqrt(D))/Q); the start is not reduced, so Q < 0 is possible
        Int num = P + sq;
        Int a;
        if (Q > 0)
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        else {
            Int num1 = num + 1;
            mpz_fdiv_q(a.get_mpz_t(), num1.get_mpz_t(), Q.get_mpz_t());
        }
        Int A = a * Am1 + Am2;
        Int B = a * Bm1 + Bm2;
        Int G = 2 * A - P0 * B;
        if (B > 0) {
            Int norm4 = G * G - D * B * B;
            if (norm4 == 4) return {abs(G), B, 1};
            if (norm4 == -4) return {abs(G), B, -1};
        }
        Am2 = Am1; Am1 = A;
        Bm2 = Bm1; Bm1 = B;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (Q == 0) throw ContractViolation("PQa: zero denominator (square discriminant?)");
    }
    throw BudgetExceeded("PQa did not terminate for delta = " + D.get_str());
}

ConicPoint fundamental_point(const PellConic& c) {
    FundamentalUnit fu = fundamental_unit(c);
    if (fu.norm == 1) return c.point(fu.t, fu.u);
    // norm -4 unit eps: eps^2 has x = t^2 + 2, y = t u
    return c.point(Int(fu.t * fu.t + 2), Int(fu.t * fu.u));
}

namespace {

unsigned long inv_mod(unsigned long a, unsigned long p) {
    Int r;
    Int ai(a), pi(p);
    if (!mpz_invert(r.get_mpz_t(), ai.get_mpz_t(), pi.get_mpz_t()))
        throw ContractViolation("not invertible");
    return mpz_get_ui(r.get_mpz_t());
}

}  // namespace

FpPoints points_mod_p(const PellConic& c, unsigned long p) {
    if (p == 2 || !is_prime(Int(p))) throw DomainError("points_mod_p: p must be an odd prime");
    unsigned long dm = mpz_fdiv_ui(c.delta().get_mpz_t(), p);
    if (dm == 0) throw DomainError("points_mod_p: p divides delta");
    FpPoints out{p, dm, {}};
    // table of square roots mod p
    std::vector<long> root(p, -1);
    for (unsigned long y = 0; y <= p / 2; ++y) root[(y * y) % p] = long(y);
    unsigned long dinv = inv_mod(dm, p);
    for (unsigned long x = 0; x < p; ++x) {
        unsigned long rhs = ((x * x + p - 4 % p) % p) * dinv % p;
        if (root[rhs] < 0) continue;
        unsigned long y = (unsigned long)root[rhs];
        out.points.emplace_back(x, y);
        if (y != 0) out.points.emplace_back(x, p - y);
    }
    return out;
}

std::pair<unsigned long, unsigned long> fp_add(const FpPoints& ctx,
                                               std::pair<unsigned long, unsigned long> a,
                                               std::pair<unsigned long, unsigned long> b) {
    unsigned long p = ctx.p;
    unsigned long inv2 = (p + 1) / 2;
    unsigned long x = (a.first * b.first % p + ctx.delta_mod_p * (a.second * b.second % p)) % p;
    unsigned long y = (a.first * b.second % p + a.second * b.first % p) % p;
    return {x * inv2 % p, y * inv2 % p};
}

std::pair<unsigned long, unsigned long> fp_scalar_multiple(
    const FpPoints& ctx, std::pair<unsigned long, unsigned long> a, unsigned long k) {
    std::pair<unsigned long, unsigned long> acc{2 % ctx.p, 0};
    auto sq = a;
    while (k > 0) {
        if (k & 1) acc = fp_add(ctx, acc, sq);
        k >>= 1;
        if (k) sq = fp_add(ctx, sq, sq);
    }
    return acc;
}

QuadUnit to_unit(const PellConic& c, const ConicPoint& p) {
    if (!p.is_integral()) throw ContractViolation("to_unit: point is not integral");
    (void)c;
    return QuadUnit{p.rx(), p.sy()};
}

ConicPoint from_unit(const PellConic& c, const QuadUnit& u) {
    return c.point(u.t, u.u);
}

QuadUnit unit_mul(const PellConic& c, const QuadUnit& a, const QuadUnit& b) {
    Int t = a.t * b.t + c.delta() * a.u * b.u;
    Int u = a.t * b.u + a.u * b.t;
    if (mpz_odd_p(t.get_mpz_t()) || mpz_odd_p(u.get_mpz_t()))
        throw ContractViolation("unit_mul: product is not in the order");
    return QuadUnit{t / 2, u / 2};
}

}  // namespace pelldescent
