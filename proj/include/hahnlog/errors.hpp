#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hahnlog {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical input failed (non-positive argument,
/// valuation outside the domain of a partial function, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Interval refinement reached the configured maximum precision without
/// separating a symbolically nonzero scalar from zero.
class UndecidedComparison : public Error {
public:
    UndecidedComparison(const std::string& scalar, const std::string& detail)
        : Error("undecided comparison: " + scalar + " (" + detail + ")"), scalar_(scalar) {}
    const std::string& scalar() const noexcept { return scalar_; }

private:
    std::string scalar_;
};

/// A truncated series has no visible term although it is not exactly zero.
class ZeroToPrecision : public DomainError {
public:
    using DomainError::DomainError;
};

class NonPositiveLeading : public DomainError {
public:
    using DomainError::DomainError;
};

class OutsideDomain : public DomainError {
public:
    using DomainError::DomainError;
};

/// The real part of a unit has no logarithm inside the scalar ring.
class NonRationalLeading : public DomainError {
public:
    using DomainError::DomainError;
};

/// A result would leave the representable scalar ring.
class NotRepresentable : public DomainError {
public:
    using DomainError::DomainError;
};

class NotInImage : public DomainError {
public:
    using DomainError::DomainError;
};

class GuardViolation : public DomainError {
public:
    using DomainError::DomainError;
};

class NonPositiveLog : public DomainError {
public:
    using DomainError::DomainError;
};

/// An integrand or region left the closed-form log-power catalogue.
class OutOfCatalogue : public Error {
public:
    using Error::Error;
};

/// Individually divergent terms of mixed sign would have to cancel.
class IndeterminateCancellation : public OutOfCatalogue {
public:
    using OutOfCatalogue::OutOfCatalogue;
};

/// Malformed text input; `offset`/`length` locate the offending span.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset, std::size_t length = 1)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset), length_(length) {}
    std::size_t offset() const noexcept { return offset_; }
    std::size_t length() const noexcept { return length_; }

private:
    std::size_t offset_;
    std::size_t length_;
};

}  // namespace hahnlog
