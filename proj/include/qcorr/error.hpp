#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operand has an unsupported shape or dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operation received a state tagged with the wrong basis.
class BasisError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be Hermitian is not, beyond tolerance.
class HermiticityError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be positive semidefinite has a significantly
/// negative eigenvalue.
class NotPsdError : public Error {
public:
    using Error::Error;
};

/// An input fails the invariants of a physical state.
class NonPhysicalError : public Error {
public:
    using Error::Error;
};

/// A request is inconsistent with the configuration it targets
/// (wrong drive pattern, nonzero detuning in a steady-state query,
/// missing initial population in the degenerate case).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A numeric routine failed to meet its accuracy contract.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace qcorr
