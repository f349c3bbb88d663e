#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative or series method failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The analytic seed backend cannot serve the requested window; callers
/// should retry with the numeric backend.
class BackendError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A function that must be zero-free vanished (alpha, u_p, ...).
class SingularityError : public NumericalError {
public:
    SingularityError(const std::string& what, double where)
        : NumericalError(what), location_(where) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

}  // namespace dlab
