#include "report.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pelldescent::cli {

ReportDocument ReportDocument::make(const std::string& command, json params) {
    ReportDocument r;
    r.doc["schema"] = kSchemaVersion;
    r.doc["command"] = command;
    r.doc["params"] = std::move(params);
    return r;
}

json ReportDocument::canonical() const {
    json c = doc;
    c.erase("timing_ms");
    return c;
}

json rat_str(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

json int_str(const Int& z) { return z.get_str(); }

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_tsv(const ReportDocument& r) {
    std::ostringstream out;
    const json& doc = r.doc;
    const std::string cmd = doc.at("command");
    auto cell = [](const json& j) -> std::string {
        if (j.is_null()) return "--";
        if (j.is_string()) return j.get<std::string>();
        return j.dump();
    };
    if (cmd == "descend") {
        out << "a\tequation\tr\ts\tx\ty\tstatus\n";
        for (const json& row : doc.at("payload").at("descendants")) {
            out << cell(row.at("a")) << '\t' << cell(row.at("equation")) << '\t'
                << cell(row.at("r")) << '\t' << cell(row.at("s")) << '\t' << cell(row.at("x"))
                << '\t' << cell(row.at("y")) << '\t' << cell(row.at("status")) << '\n';
        }
        return out.str();
    }
    if (cmd == "selmer" || cmd == "sha") {
        out << "delta\tselmer_order\tselmer_basis\tw2_order\tw2_basis\tsha_order\tredei_e4\tredei_consistent\n";
        auto emit_row = [&](const json& row) {
            if (row.contains("error")) {
                out << cell(row.at("delta")) << "\terror: " << cell(row.at("error")) << "\n";
                return;
            }
            auto basis = [&](const json& b) {
                std::string s;
                for (const json& x : b) {
                    if (!s.empty()) s += ",";
                    s += cell(x);
                }
                return s.empty() ? std::string("1") : s;
            };
            out << cell(row.at("delta")) << '\t' << cell(row.at("selmer_order")) << '\t'
                << basis(row.at("selmer_basis")) << '\t' << cell(row.at("w2_order")) << '\t'
                << basis(row.at("w2_basis")) << '\t' << cell(row.at("sha_order")) << '\t'
                << (row.contains("redei_e4") ? cell(row.at("redei_e4")) : "--") << '\t'
                << (row.contains("redei_consistent") ? cell(row.at("redei_consistent")) : "--")
                << '\n';
        };
        const json& payload = doc.at("payload");
        if (payload.contains("rows"))
            for (const json& row : payload.at("rows")) emit_row(row);
        else
            emit_row(payload);
        return out.str();
    }
    // generic one-document projection: key<TAB>value lines
    for (const auto& [k, v] : doc.at("payload").items()) out << k << '\t' << cell(v) << '\n';
    return out.str();
}

ResultCache ResultCache::from_env() {
    const char* p = std::getenv("PELLDESCENT_CACHE");
    return ResultCache(p ? std::string(p) : std::string());
}

std::optional<json> ResultCache::lookup(const json& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    const std::string want = std::to_string(fnv1a64(key.dump()));
    std::string line;
    std::optional<json> found;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json entry = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (entry.is_discarded()) continue;
        if (entry.value("hash", "") == want && entry["key"] == key) found = entry["doc"];
    }
    return found;
}

void ResultCache::append(const json& key, const json& canonical_doc) {
    if (!enabled()) return;
    std::lock_guard<std::mutex> lock(write_mutex_);
    std::ofstream out(path_, std::ios::app);
    json entry;
    entry["hash"] = std::to_string(fnv1a64(key.dump()));
    entry["key"] = key;
    entry["doc"] = canonical_doc;
    out << entry.dump() << "\n";
}

}  // namespace pelldescent::cli
