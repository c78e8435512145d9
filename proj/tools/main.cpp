#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <iostream>
#include <thread>

#include "verify.hpp"

#ifndef PELLDESCENT_DEFAULT_GOLDEN_DIR
#define PELLDESCENT_DEFAULT_GOLDEN_DIR "tests/golden"
#endif

namespace {

using namespace pelldescent;
using namespace pelldescent::cli;

// exit codes: 0 ok, 1 verification failure, 2 usage/domain error, 3 budget
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;

struct GlobalOpts {
    bool json_out = false;
    bool tsv_out = false;
    bool no_timing = false;
    unsigned jobs = 1;
};

void emit(const ReportDocument& doc, const GlobalOpts& g) {
    if (g.tsv_out)
        std::cout << to_tsv(doc);
    else
        std::cout << doc.dump();
}

json error_document(const std::string& command, const std::string& message, int code) {
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = command;
    doc["error"] = message;
    doc["exit_code"] = code;
    return doc;
}

class Timer {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

ReportDocument cached_or_compute(ResultCache& cache, const std::string& command, json params,
                                 const std::function<json()>& compute, const GlobalOpts& g) {
    Timer timer;
    ReportDocument doc = ReportDocument::make(command, params);
    json key;
    key["schema"] = kSchemaVersion;
    key["command"] = command;
    key["params"] = std::move(params);
    if (auto hit = cache.lookup(key)) {
        doc.doc = *hit;
        if (!g.no_timing) doc.set_timing_ms(timer.ms());
        return doc;
    }
    doc.set_payload(compute());
    cache.append(key, doc.canonical());
    if (!g.no_timing) doc.set_timing_ms(timer.ms());
    return doc;
}

// --range A..B runs the per-delta payload across a worker pool; rows are
// merged back in input order and failures stay isolated per row.
json range_rows(long lo, long hi, unsigned jobs, bool with_certificate) {
    std::vector<long> inputs;
    for (long d = lo; d <= hi; ++d) {
        if (d == 0 || d == 1) continue;
        inputs.push_back(d);
    }
    std::vector<json> rows(inputs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= inputs.size()) return;
            long d = inputs[i];
            try {
                Int core = squarefree_decompose(Int(d)).core;
                if (core != d) {
                    rows[i] = nullptr;  // duplicate of its squarefree core; skipped
                    continue;
                }
                PellConic c(normalize_discriminant(Int(d)));
                json row;
                row["delta"] = int_str(c.delta());
                TwoGroup sel = selmer_group(c);
                TwoGroup w2 = integral_class_group(c);
                row["selmer_order"] = int_str(sel.order());
                json sb = json::array();
                for (const SquareClass& b : sel.basis()) sb.push_back(int_str(b.rep()));
                row["selmer_basis"] = std::move(sb);
                row["w2_order"] = int_str(w2.order());
                json wb = json::array();
                for (const SquareClass& b : w2.basis()) wb.push_back(int_str(b.rep()));
                row["w2_basis"] = std::move(wb);
                row["sha_order"] = int_str(Int(sel.order() / w2.order()));
                if (mpz_odd_p(c.delta().get_mpz_t())) {
                    RedeiCheck rc = redei_check(c);
                    row["redei_e4"] = rc.e4;
                    row["redei_consistent"] = rc.consistent;
                }
                if (with_certificate && sel.order() / w2.order() > 1) {
                    ShaResult sha = sha2(c);
                    json reps = json::array();
                    for (const Descendant& t : sha.representatives) reps.push_back(int_str(t.a));
                    row["sha_representatives"] = std::move(reps);
                }
                rows[i] = std::move(row);
            } catch (const std::exception& e) {
                json row;
                row["delta"] = std::to_string(d);
                row["error"] = e.what();
                rows[i] = std::move(row);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    json out = json::array();
    for (json& r : rows)
        if (!r.is_null()) out.push_back(std::move(r));
    return out;
}

bool parse_range(const std::string& s, long& lo, long& hi) {
    auto pos = s.find("..");
    if (pos == std::string::npos) return false;
    try {
        lo = std::stol(s.substr(0, pos));
        hi = std::stol(s.substr(pos + 2));
    } catch (...) {
        return false;
    }
    return lo <= hi;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"first 2-descent on Pell conics X^2 - delta Y^2 = 4"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_flag("--json", g.json_out, "JSON output (default)");
    app.add_flag("--tsv", g.tsv_out, "TSV projection of table payloads");
    app.add_flag("--no-timing", g.no_timing, "omit the timing field (golden runs)");
    app.add_option("--jobs", g.jobs, "worker threads for range scans")->default_val(1);

    std::string delta_str, range_str, point_str, method = "both", suite;
    std::string golden_dir = PELLDESCENT_DEFAULT_GOLDEN_DIR;
    unsigned iters = 20;
    double tolerance = 1e-9;
    unsigned long search_bound = 0;
    long pp = 0, qq = 0;

    CLI::App* descend = app.add_subcommand("descend", "descendant table for one discriminant");
    descend->add_option("--delta", delta_str, "discriminant input (normalized internally)")
        ->required();
    descend->add_option("--search-bound", search_bound, "witness denominator cap");

    CLI::App* selmer = app.add_subcommand("selmer", "2-Selmer group, W2 and Sha order");
    selmer->add_option("--delta", delta_str, "discriminant input");
    selmer->add_option("--range", range_str, "scan inputs A..B");

    CLI::App* sha = app.add_subcommand("sha", "Sha_2 with certificate");
    sha->add_option("--delta", delta_str, "discriminant input");
    sha->add_option("--range", range_str, "scan inputs A..B");

    CLI::App* height = app.add_subcommand("height", "heights of a point");
    height->add_option("--delta", delta_str)->required();
    height->add_option("--point", point_str, "r,s,n for the point (r/n, s/n)")->required();
    height->add_option("--method", method, "limit|closed|both")->default_val("both");
    height->add_option("--iters", iters, "doubling iterations for the limit")->default_val(20);
    height->add_option("--tolerance", tolerance)->default_val(1e-9);

    CLI::App* scholz = app.add_subcommand("scholz", "Scholz criteria for X^2 - pq Y^2 = 1");
    scholz->add_option("--p", pp)->required();
    scholz->add_option("--q", qq)->required();

    CLI::App* verify = app.add_subcommand("verify", "verification suites");
    verify->add_option("--suite", suite, "paper-tables|axioms|oracles")->required();
    verify->add_option("--golden-dir", golden_dir, "directory with golden files");

    CLI11_PARSE(app, argc, argv);

    ResultCache cache = ResultCache::from_env();

    try {
        if (descend->parsed()) {
            json params;
            params["delta"] = delta_str;
            if (search_bound) params["search_bound"] = search_bound;
            ReportDocument doc = cached_or_compute(cache, "descend", params, [&] {
                PellConic c(normalize_discriminant(Int(delta_str)));
                WitnessOptions w;
                w.denominator_cap = search_bound;
                return descend_payload(c, w);
            }, g);
            emit(doc, g);
            return kExitOk;
        }
        if (selmer->parsed() || sha->parsed()) {
            const std::string cmd = selmer->parsed() ? "selmer" : "sha";
            if (!range_str.empty()) {
                long lo, hi;
                if (!parse_range(range_str, lo, hi))
                    throw DomainError("bad --range, expected A..B with A <= B");
                json params;
                params["range"] = range_str;
                ReportDocument doc = cached_or_compute(cache, cmd, params, [&] {
                    json payload;
                    payload["rows"] = range_rows(lo, hi, g.jobs, cmd == "sha");
                    return payload;
                }, g);
                emit(doc, g);
                return kExitOk;
            }
            if (delta_str.empty()) throw DomainError("need --delta or --range");
            json params;
            params["delta"] = delta_str;
            ReportDocument doc = cached_or_compute(cache, cmd, params, [&] {
                PellConic c(normalize_discriminant(Int(delta_str)));
                return selmer_payload(c, cmd == "sha");
            }, g);
            emit(doc, g);
            return kExitOk;
        }
        if (height->parsed()) {
            json params;
            params["delta"] = delta_str;
            params["point"] = point_str;
            params["method"] = method;
            params["iters"] = iters;
            ReportDocument doc = cached_or_compute(cache, "height", params, [&] {
                PellConic c(normalize_discriminant(Int(delta_str)));
                auto c1 = point_str.find(',');
                auto c2 = point_str.find(',', c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw DomainError("bad --point, expected r,s,n");
                Int r(point_str.substr(0, c1)), s(point_str.substr(c1 + 1, c2 - c1 - 1)),
                    n(point_str.substr(c2 + 1));
                if (n <= 0) throw DomainError("point denominator must be positive");
                ConicPoint p = c.point(Rat(r, n), Rat(s, n));
                return height_payload(c, p, method, iters, tolerance);
            }, g);
            emit(doc, g);
            return kExitOk;
        }
        if (scholz->parsed()) {
            json params;
            params["p"] = pp;
            params["q"] = qq;
            ReportDocument doc = cached_or_compute(
                cache, "scholz", params, [&] { return scholz_payload(Int(pp), Int(qq)); }, g);
            emit(doc, g);
            return kExitOk;
        }
        if (verify->parsed()) {
            SuiteResult res;
            if (suite == "paper-tables")
                res = verify_paper_tables(golden_dir);
            else if (suite == "axioms")
                res = verify_axioms();
            else if (suite == "oracles")
                res = verify_oracles();
            else
                throw DomainError("unknown suite: " + suite);
            ReportDocument doc = ReportDocument::make("verify", json{{"suite", suite}});
            json payload;
            payload["checks"] = res.checks;
            payload["passed"] = res.passed;
            doc.set_payload(payload);
            emit(doc, g);
            if (!res.passed) {
                for (const json& c : res.checks)
                    if (!c["passed"].get<bool>())
                        std::cerr << "FAILED: " << c["name"].get<std::string>() << "\n";
            }
            return res.passed ? kExitOk : kExitVerifyFailure;
        }
    } catch (const ContractViolation& e) {
        std::cout << error_document(app.get_subcommands()[0]->get_name(), e.what(), kExitDomain)
                         .dump(2)
                  << "\n";
        return kExitDomain;
    } catch (const BudgetExceeded& e) {
        std::cout << error_document(app.get_subcommands()[0]->get_name(), e.what(), kExitBudget)
                         .dump(2)
                  << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cout << error_document(app.get_subcommands()[0]->get_name(), e.what(), kExitDomain)
                         .dump(2)
                  << "\n";
        return kExitDomain;
    }
    return kExitDomain;
}
