#pragma once

// Builders for the per-subcommand payloads. Shared by the CLI and the
// verification suites so golden comparisons exercise the same code path.

#include "report.hpp"

#include "pelldescent/criteria.hpp"
#include "pelldescent/heights.hpp"

namespace pelldescent::cli {

json descend_payload(const PellConic& c, const WitnessOptions& opts = {});

/// Selmer/W2/Sha summary; with_certificate adds the rows of locally solvable
/// descendants lacking integral points (the Sha certificate).
json selmer_payload(const PellConic& c, bool with_certificate, const WitnessOptions& opts = {});

json height_payload(const PellConic& c, const ConicPoint& p, const std::string& method,
                    unsigned iterations, double tolerance);

json scholz_payload(const Int& p, const Int& q);

std::string descendant_equation(const Descendant& t);

}  // namespace pelldescent::cli
