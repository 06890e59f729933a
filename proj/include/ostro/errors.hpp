#pragma once

#include <stdexcept>
#include <string>

namespace ostro {

/// Bad call arguments (order/dimension mismatch, out-of-range index).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Point lies in a model's excluded set.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Newton iteration exhausted its budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double last_residual)
        : std::runtime_error(msg), last_residual(last_residual) {}
    double last_residual;
};

/// Singular vertical hessian (or other regularity failure) during a solve.
class RegularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Not enough samples (or too-wide stencil) for a finite-difference request.
class StencilError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Chart transition failure (singular Jacobian, inconsistent round trip).
class TransitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Conjugate search argmax landed on the search-box boundary.
class BoxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration file; carries a 1-based line number (0 = whole file).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line(line) {}
    int line;
};

} // namespace ostro
