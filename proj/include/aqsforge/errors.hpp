#pragma once

#include <stdexcept>

namespace aqsforge {

/// An input violated an operation's stated precondition (non-unit state,
/// non-unitary operator, index out of range, unnormalized coefficients).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The input is structurally outside what the operation supports
/// (e.g. a non-normal matrix passed to the closed-form eigensolver).
struct UnsupportedInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A construction that is guaranteed to succeed failed its own final check.
/// Never swallowed: callers let this propagate so the breach is visible.
struct InternalInconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace aqsforge
