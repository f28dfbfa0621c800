#pragma once

#include <stdexcept>
#include <string>

namespace polyfactor {

// Base class for all toolkit errors so callers can catch in one clause.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// exact_div called with a zero divisor polynomial.
struct ZeroDivisor : Error {
    ZeroDivisor() : Error("division by the zero polynomial") {}
};

// elementary_symmetric index outside [0, n].
struct OutOfRange : Error {
    explicit OutOfRange(const std::string& what) : Error(what) {}
};

// Operation requires a monic (or +/- monic) input polynomial.
struct NotMonic : Error {
    explicit NotMonic(const std::string& what) : Error(what) {}
};

// Factorization would exceed the configured degree cap; the instance is
// outside the intended desk-scale family, reject rather than run forever.
struct DegreeTooLarge : Error {
    explicit DegreeTooLarge(const std::string& what) : Error(what) {}
};

// Subset-sum DP table would exceed the configured memory budget.
struct CapacityExceeded : Error {
    explicit CapacityExceeded(const std::string& what) : Error(what) {}
};

// Enumeration walked past the configured node budget (divisor streams,
// brute-force oracles, trial division of oversized constants).
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// A factor witness cannot be expressed over the instance's linear terms.
struct UntranslatableWitness : Error {
    explicit UntranslatableWitness(const std::string& what) : Error(what) {}
};

// Malformed instance/verdict JSON.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace polyfactor
