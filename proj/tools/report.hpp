#pragma once

// ReportDocument and the append-only result cache backing the CLI. All
// integers are serialized as decimal strings: bigints overflow native JSON
// numbers.

#include <json.hpp>

#include <mutex>
#include <optional>
#include <string>

#include "pelldescent/selmer.hpp"

namespace pelldescent::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "pelldescent/1";

struct ReportDocument {
    json doc;

    static ReportDocument make(const std::string& command, json params);
    void set_payload(json payload) { doc["payload"] = std::move(payload); }
    void set_timing_ms(double ms) { doc["timing_ms"] = ms; }

    /// Serialized form; parse(dump) round-trips losslessly.
    std::string dump() const { return doc.dump(2) + "\n"; }
    /// The document with the volatile timing field removed (cache/golden key).
    json canonical() const;
};

/// Flat TSV projection of the table payloads (descend rows, selmer scan rows).
std::string to_tsv(const ReportDocument& r);

/// FNV-1a 64-bit over a string; cache key hash.
std::uint64_t fnv1a64(const std::string& s);

// Append-only single-file cache keyed by (schema, command, delta, params).
// Enabled only when PELLDESCENT_CACHE names a path.
class ResultCache {
  public:
    static ResultCache from_env();
    explicit ResultCache(std::string path) : path_(std::move(path)) {}

    bool enabled() const { return !path_.empty(); }
    std::optional<json> lookup(const json& key) const;
    void append(const json& key, const json& canonical_doc);

  private:
    std::string path_;
    std::mutex write_mutex_;
};

// json helpers for exact values
json rat_str(const Rat& q);
json int_str(const Int& z);

}  // namespace pelldescent::cli
