#pragma once

#include <stdexcept>
#include <string>

namespace infomeasures {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a kernel (e.g. log_gamma(-1)).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Distribution parameters outside the family's parameter space.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A measure was requested outside the region where it is finite or defined.
/// `inequality()` names the violated condition, e.g. "α(μ−1) ≤ −1".
class ValidityDomainError : public Error {
public:
    ValidityDomainError(std::string inequality, const std::string& context)
        : Error(context + ": " + inequality), inequality_(std::move(inequality)) {}

    const std::string& inequality() const noexcept { return inequality_; }

private:
    std::string inequality_;
};

/// A continuous-only (or discrete-only) operation got the other kind.
class FamilyMismatch : public Error {
public:
    using Error::Error;
};

/// Operation has no formula for this family (e.g. KL across families).
class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

class UnboundedDensity : public Error {
public:
    using Error::Error;
};

/// Quadrature or series budget exhausted before the error certificate held.
class NonConvergence : public Error {
public:
    using Error::Error;
};

class NotPositiveSemidefinite : public Error {
public:
    using Error::Error;
};

class SingularCovariance : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (distribution specs, grids).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace infomeasures
