#include "payloads.hpp"

namespace pelldescent::cli {

std::string descendant_equation(const Descendant& t) {
    std::string lhs = t.a == 1 ? "r^2" : t.a.get_str() + " r^2";
    if (t.b >= 0)
        lhs += t.b == 1 ? " - s^2" : " - " + t.b.get_str() + " s^2";
    else
        lhs += t.b == -1 ? " + s^2" : " + " + Int(-t.b).get_str() + " s^2";
    return lhs + " = 4";
}

namespace {

json basis_json(const TwoGroup& g) {
    json out = json::array();
    for (const SquareClass& c : g.basis()) out.push_back(int_str(c.rep()));
    return out;
}

json elements_json(const TwoGroup& g) {
    json out = json::array();
    for (const SquareClass& c : g.elements()) out.push_back(int_str(c.rep()));
    return out;
}

}  // namespace

json descend_payload(const PellConic& c, const WitnessOptions& opts) {
    SelmerReport rep = analyze_descendants(c, opts);
    json payload;
    payload["delta"] = int_str(c.delta());
    payload["d"] = int_str(c.disc().d);
    json rows = json::array();
    for (const DescendantRow& row : rep.rows) {
        json r;
        r["a"] = int_str(row.t.a);
        r["b"] = int_str(row.t.b);
        r["equation"] = descendant_equation(row.t);
        if (row.integral_point) {
            const auto& [rr, ss] = *row.integral_point;
            DescendantPoint dp = descendant_point(row.t, Rat(rr), Rat(ss));
            ConicPoint lift = lift_to_conic(c, dp);
            r["status"] = "integral";
            r["r"] = int_str(rr);
            r["s"] = int_str(ss);
            r["x"] = rat_str(lift.x());
            r["y"] = rat_str(lift.y());
        } else if (row.witness) {
            ConicPoint lift = lift_to_conic(c, *row.witness);
            r["status"] = "rational";
            r["r"] = rat_str(row.witness->r);
            r["s"] = rat_str(row.witness->s);
            r["x"] = rat_str(lift.x());
            r["y"] = rat_str(lift.y());
        } else if (row.solvable_everywhere) {
            r["status"] = "rational (witness cap hit)";
            r["r"] = nullptr;
            r["s"] = nullptr;
            r["x"] = nullptr;
            r["y"] = nullptr;
        } else {
            r["status"] = "obstructed";
            r["r"] = nullptr;
            r["s"] = nullptr;
            r["x"] = nullptr;
            r["y"] = nullptr;
            for (const LocalVerdict& v : row.verdicts)
                if (!v.solvable) {
                    r["obstruction_place"] = v.place.str();
                    break;
                }
        }
        rows.push_back(std::move(r));
    }
    payload["descendants"] = std::move(rows);
    payload["selmer_order"] = int_str(rep.selmer.order());
    payload["selmer_basis"] = basis_json(rep.selmer);
    payload["w2_order"] = int_str(rep.w2.order());
    payload["w2_basis"] = basis_json(rep.w2);
    payload["sha_order"] = int_str(rep.sha_order);
    return payload;
}

json selmer_payload(const PellConic& c, bool with_certificate, const WitnessOptions& opts) {
    json payload;
    payload["delta"] = int_str(c.delta());
    payload["d"] = int_str(c.disc().d);
    TwoGroup sel = selmer_group(c);
    TwoGroup w2 = integral_class_group(c);
    ShaResult sha = sha2(c);
    payload["selmer_order"] = int_str(sel.order());
    payload["selmer_basis"] = basis_json(sel);
    if (sel.rank() <= 6) payload["selmer_elements"] = elements_json(sel);
    payload["w2_order"] = int_str(w2.order());
    payload["w2_basis"] = basis_json(w2);
    payload["sha_order"] = int_str(sha.order);
    json reps = json::array();
    for (const Descendant& t : sha.representatives) reps.push_back(int_str(t.a));
    payload["sha_representatives"] = std::move(reps);
    json unsolvable = json::array();
    for (const Descendant& t : enumerate_descendants(c))
        if (!locally_solvable(c, t).first) unsolvable.push_back(int_str(t.a));
    payload["locally_unsolvable"] = std::move(unsolvable);
    if (mpz_odd_p(c.delta().get_mpz_t())) {
        RedeiCheck rc = redei_check(c);
        payload["redei_e4"] = rc.e4;
        payload["redei_consistent"] = rc.consistent;
    }
    if (with_certificate) {
        json cert = json::array();
        for (const Descendant& t : sha.representatives) {
            json entry;
            entry["a"] = int_str(t.a);
            entry["equation"] = descendant_equation(t);
            entry["locally_solvable"] = true;
            entry["integral_point"] = false;
            if (auto w = rational_witness(c, t, opts)) {
                entry["witness_r"] = rat_str(w->r);
                entry["witness_s"] = rat_str(w->s);
            }
            cert.push_back(std::move(entry));
        }
        payload["certificate"] = std::move(cert);
    }
    return payload;
}

json height_payload(const PellConic& c, const ConicPoint& p, const std::string& method,
                    unsigned iterations, double tolerance) {
    json payload;
    payload["delta"] = int_str(c.delta());
    payload["x"] = rat_str(p.x());
    payload["y"] = rat_str(p.y());
    payload["naive_H"] = int_str(naive_height(p));
    HeightValue h0 = log_height(p);
    payload["h0"] = h0.value;
    HeightValue closed = canonical_height_closed(c, p);
    json jc;
    jc["value"] = closed.value;
    jc["error_bound"] = closed.error_bound;
    payload["closed"] = std::move(jc);
    if (method == "limit" || method == "both") {
        HeightValue lim = canonical_height_limit(c, p, iterations);
        json jl;
        jl["value"] = lim.value;
        jl["error_bound"] = lim.error_bound;
        jl["iterations"] = lim.iterations;
        payload["limit"] = std::move(jl);
        payload["limit_closed_agree"] =
            std::abs(lim.value - closed.value) <= lim.error_bound + tolerance;
    }
    payload["h_minus_h0_within_log4"] = std::abs(closed.value - h0.value) <= std::log(4.0) + 1e-12;
    HeightAxiomReport ax = height_axiom_report(c, p, p, tolerance);
    json checks = json::array();
    for (const AxiomCheck& a : ax.checks) {
        json e;
        e["name"] = a.name;
        e["passed"] = a.passed;
        checks.push_back(std::move(e));
    }
    payload["axioms"] = std::move(checks);
    payload["axioms_all_passed"] = ax.all_passed();
    return payload;
}

json scholz_payload(const Int& p, const Int& q) {
    ScholzReport rep = scholz_classify(p, q);
    json payload;
    payload["p"] = int_str(p);
    payload["q"] = int_str(q);
    payload["legendre"] = rep.legendre;
    if (rep.p4) payload["quartic_p_mod_q"] = *rep.p4;
    if (rep.q4) payload["quartic_q_mod_p"] = *rep.q4;
    payload["guaranteed_a"] = rep.guaranteed_a == 0 ? json(nullptr) : int_str(rep.guaranteed_a);
    payload["sha_element_a"] = rep.sha_element_a == 0 ? json(nullptr) : int_str(rep.sha_element_a);
    json table = json::array();
    for (const ScholzRow& row : rep.table) {
        json r;
        r["a"] = int_str(row.a);
        r["equation"] = row.equation;
        r["condition"] = row.condition;
        r["condition_holds"] = row.condition_holds ? json(*row.condition_holds) : json(nullptr);
        table.push_back(std::move(r));
    }
    payload["table"] = std::move(table);

    // Confirmations: the W_2 generator from the fundamental point, and the
    // negative-Pell verdict against the continued-fraction parity oracle.
    PellConic c(normalize_discriminant(p * q));
    ConicPoint p1 = fundamental_point(c);
    IntegralClassification cls = classify_integral_point(c, p1);
    payload["w2_generator_a"] = int_str(cls.host.a);
    payload["w2_point_r"] = int_str(cls.r);
    payload["w2_point_s"] = int_str(cls.s);
    FundamentalUnit fu = fundamental_unit(c);
    payload["negative_pell_minus4_solvable"] = fu.norm == -1;
    CriterionVerdict np = negative_pell(p, q);
    payload["negative_pell_verdict"] = to_string(np.conclusion);
    payload["negative_pell_rule"] = np.rule;
    bool parity = negative_pell_parity_oracle(p * q);
    payload["negative_pell_parity_oracle"] = parity;
    bool guaranteed_confirmed = true;
    if (rep.guaranteed_a == p * q)
        guaranteed_confirmed = (fu.norm == -1);
    else if (rep.guaranteed_a != 0)
        guaranteed_confirmed = (cls.host.a == rep.guaranteed_a);
    payload["guaranteed_confirmed"] = guaranteed_confirmed;
    return payload;
}

}  // namespace pelldescent::cli
