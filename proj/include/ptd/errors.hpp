#pragma once

#include <stdexcept>
#include <string>

namespace ptd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible domain (a <= 0, rho2 >= 1, ...).
class ParameterDomainError : public Error {
public:
    using Error::Error;
};

/// A monotone inverse was requested for a value outside the attainable range.
class InversionRangeError : public Error {
public:
    using Error::Error;
};

/// The vector field or feedback law divides by a vanishing density.
class SingularFieldError : public Error {
public:
    using Error::Error;
};

/// A perturbation sample exceeded its declared bound.
class BoundViolationError : public Error {
public:
    using Error::Error;
};

/// Scheme, parameters, or run configuration do not fit together.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Caller-side precondition of an oracle was not met.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace ptd
