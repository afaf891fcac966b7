#pragma once

#include <stdexcept>
#include <string>

namespace bregman {

/// Raised by operations that require a smooth loss (e.g. the 0-1 loss has
/// no weight function density and no usable entropy derivative).
class NotSmoothError : public std::domain_error {
public:
    explicit NotSmoothError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double location)
        : std::runtime_error(what + " (near x = " + std::to_string(location) + ")"),
          location_(location) {}
    double location() const { return location_; }

private:
    double location_;
};

/// Raised when a constrained problem has an empty feasible set.
class InfeasibleError : public std::domain_error {
public:
    explicit InfeasibleError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace bregman
