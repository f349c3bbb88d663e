#include "darboux_lab/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "darboux_lab/error.hpp"

namespace dlab::specfun {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi x) with the argument reduced first so integers give exact zeros.
double sin_pi(double x) {
    const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
    if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
    return std::sin(std::numbers::pi * r);
}

bool is_exact_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Plain power series of 1F1 / 2F1. `ratio(k)` is term_{k+1} / term_k.
// `denominator_zero(k)` flags a vanishing (c)_k before termination.
template <typename Ratio, typename DenomZero>
SeriesResult sum_series(Ratio ratio, DenomZero denominator_zero, double min_k) {
    SeriesResult out;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        if (denominator_zero(k)) {
            out.value = sum;
            out.terms_used = k + 1;
            out.converged = false;
            return out;
        }
        const double r = ratio(k);
        const double next = term * r;
        if (next == 0.0) {
            // Terminating polynomial (numerator Pochhammer hit zero) or z == 0.
            out.value = sum;
            out.terms_used = k + 1;
            out.converged = true;
            return out;
        }
        sum += next;
        term = next;
        // Past the peak the terms shrink monotonically; the remaining tail is
        // bounded by a geometric series with the current ratio.
        const double next_ratio = std::abs(ratio(k + 1));
        if (k + 1 > min_k && next_ratio < 1.0) {
            const double tail = std::abs(term) * next_ratio / (1.0 - next_ratio);
            if (tail <= 1e-17 * std::abs(sum)) {
                out.value = sum;
                out.terms_used = k + 2;
                out.converged = true;
                return out;
            }
        }
    }
    out.value = sum;
    out.terms_used = kMaxSeriesTerms;
    out.converged = false;
    return out;
}

SeriesResult kummer_series(double a, double c, double z) {
    return sum_series(
        [=](int k) { return (a + k) * z / ((c + k) * (k + 1.0)); },
        [=](int k) { return c + k == 0.0 && a + k != 0.0; },
        std::abs(a) + std::abs(c) + 1.0);
}

SeriesResult gauss_series(double a, double b, double c, double z) {
    return sum_series(
        [=](int k) { return (a + k) * (b + k) * z / ((c + k) * (k + 1.0)); },
        [=](int k) { return c + k == 0.0 && a + k != 0.0 && b + k != 0.0; },
        std::abs(a) + std::abs(b) + std::abs(c) + 1.0);
}

}  // namespace

bool is_nonpositive_integer(double x, double tol) {
    const double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) <= tol;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum in its accurate range.
        return std::log(std::numbers::pi / std::abs(sin_pi(x))) - log_gamma(1.0 - x);
    }
    const double xm = x - 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (xm + static_cast<double>(i));
    const double t = xm + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(acc);
}

double gamma(double x) {
    if (is_exact_nonpositive_integer(x)) throw DomainError("gamma: pole at nonpositive integer");
    if (x > 0.0) return std::exp(log_gamma(x));
    return std::numbers::pi / (sin_pi(x) * std::exp(log_gamma(1.0 - x)));
}

double reciprocal_gamma(double x) {
    if (is_exact_nonpositive_integer(x)) return 0.0;
    if (x > 0.0) return std::exp(-log_gamma(x));
    return sin_pi(x) * std::exp(log_gamma(1.0 - x)) / std::numbers::pi;
}

SeriesResult kummer_1f1(double a, double c, double z) {
    if (z == 0.0) return {1.0, 1, true};
    if (z < 0.0 && !is_exact_nonpositive_integer(a)) {
        SeriesResult r = kummer_series(c - a, c, -z);
        r.value *= std::exp(z);
        return r;
    }
    return kummer_series(a, c, z);
}

SeriesResult gauss_2f1(double a, double b, double c, double z) {
    const bool terminating = is_exact_nonpositive_integer(a) || is_exact_nonpositive_integer(b);
    // A terminating series is a polynomial and may be evaluated at z = 1.
    if (!(z >= 0.0 && (z < 1.0 || (terminating && z == 1.0)))) {
        throw DomainError("gauss_2f1: z must lie in [0, 1)");
    }
    if (z == 0.0) return {1.0, 1, true};
    if (terminating || z <= 0.5) {
        return gauss_series(a, b, c, z);
    }
    const double s = c - a - b;
    if (std::abs(s - std::round(s)) < 1e-6) return gauss_series(a, b, c, z);

    // Connection to the singular point z = 1.
    const double w = 1.0 - z;
    const SeriesResult f1 = gauss_series(a, b, 1.0 - s, w);
    const SeriesResult f2 = gauss_series(c - a, c - b, 1.0 + s, w);
    const double gc = gamma(c);
    const double coef1 = gc * gamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    const double coef2 = gc * gamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
    SeriesResult out;
    out.value = coef1 * f1.value + coef2 * std::pow(w, s) * f2.value;
    out.terms_used = f1.terms_used + f2.terms_used;
    out.converged = f1.converged && f2.converged;
    return out;
}

double laguerre(int n, double alpha, double y) {
    if (n < 0) throw DomainError("laguerre: degree must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - y;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - y) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace dlab::specfun
