#pragma once

#include <stdexcept>
#include <string>

namespace gca {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, CSV, configuration strings, CLI arguments).
struct ParseError : Error {
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
struct DomainError : Error {
    using Error::Error;
};

/// An enumeration would exceed the configured size budget.
struct BudgetError : DomainError {
    using DomainError::DomainError;
};

/// A condition that the library guarantees internally was violated.
struct InternalError : Error {
    using Error::Error;
};

} // namespace gca
