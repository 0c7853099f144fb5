#pragma once

#include <stdexcept>
#include <string>

namespace borelwkb {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad index, point outside a
/// domain, order out of range). The CLI maps these to exit code 3.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to deliver a trustworthy answer. The CLI maps
/// these to exit code 4.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed input text (JSON documents, complex literals). The CLI maps
/// these to exit code 2.
class ParseError : public Error {
public:
    using Error::Error;
};

class InsufficientArguments : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised by a point evaluation or transform at the origin.
class ZeroPointError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A Laurent term decays too slowly (exponent <= 1) for its tail integral
/// along a ray to converge.
class NonIntegrableTerm : public DomainError {
public:
    using DomainError::DomainError;
};

class SectorViolation : public DomainError {
public:
    using DomainError::DomainError;
};

class TruncationExhausted : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleOnAxis : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DescentFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SeriesDepthError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace borelwkb
