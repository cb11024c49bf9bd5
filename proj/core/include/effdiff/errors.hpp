#pragma once

#include <stdexcept>
#include <string>

namespace effdiff {

// Precondition or argument-range failure.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedDimension : DomainError {
    using DomainError::DomainError;
};

// A caller-supplied searcher, oracle or function broke its stated contract.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// A procedure stopped before finishing (oracle unknown, pool or cap exhausted).
struct Aborted : std::runtime_error {
    std::string transcript;
    Aborted(const std::string& what, std::string t = {})
        : std::runtime_error(what), transcript(std::move(t)) {}
};

}  // namespace effdiff
