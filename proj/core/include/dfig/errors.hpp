#pragma once

#include <stdexcept>
#include <string>

namespace dfig {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live on incompatible grids (order or expansion point differ),
/// or an index is out of range.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A leading coefficient (or pivot, or matrix) is too close to singular.
class SingularError : public Error {
public:
    using Error::Error;
};

/// A value left the representable range (overflow, invalid domain).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Model evaluation produced a non-finite value.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Equilibrium / consistency initialization failed to converge.
class InitError : public Error {
public:
    using Error::Error;
};

/// A time-domain integration run failed.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Configuration file parse or validation failure.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Eigen-decomposition failure.
class EigenError : public Error {
public:
    using Error::Error;
};

} // namespace dfig
