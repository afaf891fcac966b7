#pragma once

#include <functional>

namespace bregman {

using ScalarFn = std::function<double(double)>;

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance.
/// Throws QuadratureError if the recursion depth limit is exceeded before
/// the tolerance is met.
double integrate(const ScalarFn& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 60);

struct ScalarMin {
    double x;
    double value;
};

/// Golden-section minimization of f over [a, b] down to the given interval
/// resolution. Tracks the best point evaluated anywhere (including the
/// endpoints), so flat or discontinuous objectives still return a point
/// from the minimizing region.
ScalarMin golden_section_min(const ScalarFn& f, double a, double b,
                             double resolution = 1e-6);

/// Central first difference with step h.
double central_difference(const ScalarFn& f, double x, double h);

/// Central second difference with step h.
double second_difference(const ScalarFn& f, double x, double h);

/// Default finite-difference step used when no analytic derivative exists.
double default_fd_step(double x);

}  // namespace bregman
