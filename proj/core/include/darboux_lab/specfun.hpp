#pragma once

namespace dlab::specfun {

/// Outcome of a truncated series. A non-converged value must not be used;
/// callers propagate it as an error.
struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
};

inline constexpr int kMaxSeriesTerms = 500;

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, n = 9). Throws DomainError for x <= 0.
double log_gamma(double x);

/// Gamma(x) for real x that is not a nonpositive integer. Negative arguments
/// go through the reflection formula.
double gamma(double x);

/// 1 / Gamma(x); exactly zero at the poles of Gamma.
double reciprocal_gamma(double x);

/// Kummer's confluent hypergeometric function 1F1(a; c; z).
/// Negative z is mapped through Kummer's transformation so that the summed
/// series has no cancellation for the usual parameter ranges.
SeriesResult kummer_1f1(double a, double c, double z);

/// Gauss hypergeometric function 2F1(a, b; c; z) for z in [0, 1) (z = 1 is
/// accepted for terminating series).
/// Terminating series are summed exactly. Otherwise the power series is used
/// for z <= 0.5 and the connection formula in 1 - z beyond that (unless
/// c - a - b is an integer, where only the direct series is attempted).
SeriesResult gauss_2f1(double a, double b, double c, double z);

/// Associated Laguerre polynomial L_n^(alpha)(y) by three-term recurrence.
double laguerre(int n, double alpha, double y);

/// True when x is within tol of a nonpositive integer.
bool is_nonpositive_integer(double x, double tol = 1e-9);

}  // namespace dlab::specfun
