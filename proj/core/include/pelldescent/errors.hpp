#pragma once

#include <stdexcept>

namespace pelldescent {

// A caller broke a documented precondition or an internal invariant failed.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Input outside the mathematical domain of an operation (degenerate conic,
// undefined residue symbol, out-of-scope theorem hypothesis).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configurable effort limit was hit before an answer could be produced.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pelldescent
