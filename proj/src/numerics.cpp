#include "bregman/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "bregman/errors.hpp"

namespace bregman {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const ScalarFn& f, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    // Relative floor keeps large-magnitude integrals (truncated endpoint
    // singularities) convergent; the absolute tolerance governs otherwise.
    if (std::abs(err) <= 15.0 * (tol + 1e-12 * std::abs(left + right))) {
        return left + right + err / 15.0;
    }
    if (depth <= 0) {
        throw QuadratureError("adaptive Simpson did not converge", m);
    }
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return sign * adaptive(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

ScalarMin golden_section_min(const ScalarFn& f, double a, double b, double resolution) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

    ScalarMin best{a, f(a)};
    auto eval = [&](double x) {
        const double v = f(x);
        if (v < best.value) best = {x, v};
        return v;
    };
    eval(b);

    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > resolution) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eval(d);
        }
    }
    eval(0.5 * (a + b));
    return best;
}

double central_difference(const ScalarFn& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double second_difference(const ScalarFn& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

double default_fd_step(double x) {
    return std::max(1e-6, 1e-6 * std::abs(x));
}

}  // namespace bregman
