#pragma once

#include "payloads.hpp"

namespace pelldescent::cli {

struct SuiteResult {
    bool passed = true;
    json checks = json::array();

    void add(const std::string& name, bool ok, const std::string& detail = "");
};

/// paper-tables: regenerate the three worked tables and byte-compare against
/// the golden files in golden_dir.
SuiteResult verify_paper_tables(const std::string& golden_dir);

/// axioms: randomized group-law, Weil-map and height-law checks (fixed seeds).
SuiteResult verify_axioms();

/// oracles: finite-field point counts, Hilbert product formula, dual
/// local-solvability routes, continued-fraction parity, factorization
/// round-trips, witness existence.
SuiteResult verify_oracles();

}  // namespace pelldescent::cli
