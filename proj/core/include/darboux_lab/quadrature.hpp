#pragma once

#include <cmath>
#include <complex>
#include <span>

#include "darboux_lab/error.hpp"

namespace dlab {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 60;
};

namespace detail {

template <typename F, typename T>
T simpson_step(const F& f, double a, double b, T fa, T fm, T fb, T whole, double tol, int depth,
               int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const T flm = f(lm);
    const T frm = f(rm);
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    if (depth >= max_depth) {
        throw NumericalError("adaptive_simpson: recursion limit reached");
    }
    if (depth > 4 && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature with interval bisection. Works for real or
/// complex integrands; the tolerance is absolute.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, QuadratureOptions opts = {}) {
    using T = decltype(f(a));
    if (a == b) return T{};
    const double m = 0.5 * (a + b);
    const T fa = f(a);
    const T fm = f(m);
    const T fb = f(b);
    const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, opts.abs_tol, 0, opts.max_depth);
}

/// Composite Simpson rule on uniformly spaced samples. An odd number of
/// intervals is closed with Simpson's 3/8 rule on the last three.
double simpson_samples(std::span<const double> y, double h);
std::complex<double> simpson_samples(std::span<const std::complex<double>> y, double h);

}  // namespace dlab
