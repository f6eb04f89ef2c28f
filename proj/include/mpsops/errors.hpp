#pragma once

#include <stdexcept>
#include <string>

namespace mpsops {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad radii, duplicate sites, negative weight values.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A standing assumption of the analysis does not hold for the given configuration.
class AssumptionViolation : public Error {
public:
    using Error::Error;
};

/// An operator denominator fell below its positivity floor.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance at maximum refinement.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration file: unreadable, not JSON, or missing/mistyped fields.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mpsops
