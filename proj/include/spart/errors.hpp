#pragma once

#include <stdexcept>
#include <string>

namespace spart {

// Precondition violation: the caller handed us input outside the documented domain.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A certified computation hit its precision ceiling without reaching a decision.
// The condition that stayed open is in the message; callers that can live with
// three-valued answers should catch this (or use the in-band tri-state results).
struct UndecidedError : std::runtime_error {
    explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

// A certificate derivation refused because a hypothesis of the underlying
// theorem could not be certified for this input.  Names the hypothesis.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace spart
