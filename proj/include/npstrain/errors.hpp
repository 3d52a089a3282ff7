#pragma once

#include <stdexcept>
#include <string>

namespace npstrain {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete run configuration. CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input outside the domain of an operation (bad geometry, out-of-range
/// wavelength, infeasible perimeter, ...). CLI exit code 3.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inadmissible particle boundary: overlaps its periodic copies, leaves the
/// strip, self-intersects or is under-resolved.
class GeometryError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Evaluation point on the singular lattice of the periodic kernel.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Linear system or eigenproblem that cannot be solved reliably. CLI exit code 4.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Real contrast sitting on an eigenvalue of the NP operator.
class PoleError : public NumericalError {
public:
    PoleError(const std::string& what, int mode_index)
        : NumericalError(what), mode_index_(mode_index) {}
    [[nodiscard]] int mode_index() const noexcept { return mode_index_; }

private:
    int mode_index_;
};

} // namespace npstrain
