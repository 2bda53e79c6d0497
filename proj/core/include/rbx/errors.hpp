#pragma once

#include <stdexcept>
#include <string>

namespace rbx {

// Precondition violations: mismatched descriptors, invalid elements, bad arguments.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A resource guard tripped: word-length or rewrite-step limit exceeded.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A base operator was applied outside its domain
// (e.g. the integral operator meeting a fractional part).
struct OperatorUndefined : DomainError {
    using DomainError::DomainError;
};

// An internal invariant failed; indicates a bug, not a user error.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace rbx
