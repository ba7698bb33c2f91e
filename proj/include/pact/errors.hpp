#pragma once

#include <stdexcept>
#include <string>

namespace pact {

/// Base class for all library errors.
struct pact_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally invalid input: shape mismatches, bad literals, unknown names.
struct malformed_input : pact_error {
    using pact_error::pact_error;
};

/// A well-formed system that violates a stated precondition (failed axiom,
/// non-injective map, domain not a Region, ...).
struct validation_error : pact_error {
    using pact_error::pact_error;
};

/// Operation needs a group-mode system but got a cone-only one.
struct requires_extension_error : pact_error {
    using pact_error::pact_error;
};

/// Operation needs a free action; carries a human-readable witness.
struct freeness_error : pact_error {
    using pact_error::pact_error;
};

/// Operation is not defined for this space backend.
struct unsupported_backend_error : pact_error {
    using pact_error::pact_error;
};

}  // namespace pact
