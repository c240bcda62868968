#pragma once

#include <stdexcept>
#include <string>

namespace sharpfr {

/// Argument outside the domain where an operation is defined or certified.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Adaptive quadrature ran out of its evaluation budget before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_value, double best_error)
        : std::runtime_error(what), best_value_(best_value), best_error_(best_error) {}

    double best_value() const noexcept { return best_value_; }
    double best_error() const noexcept { return best_error_; }

private:
    double best_value_;
    double best_error_;
};

/// Input for which a formula has a vanishing denominator (e.g. ||Sf|| = 0).
class DegenerateInputError : public std::runtime_error {
public:
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sharpfr
