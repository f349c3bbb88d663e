#include "darboux_lab/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "darboux_lab/error.hpp"
#include "darboux_lab/quadrature.hpp"

namespace dlab {
namespace {

// Seed sample divided by its largest entry.
struct Scaled {
    SeedSample s;
    double scale;
};

Scaled rescale(const SeedSample& s) {
    const double m = std::max({std::abs(s.u), std::abs(s.du), std::abs(s.v), std::abs(s.dv)});
    if (m == 0.0 || !std::isfinite(m)) throw NumericalError("alpha: degenerate seed sample");
    return {{s.u / m, s.du / m, s.v / m, s.dv / m}, m};
}

}  // namespace

ErmakovCoeffs make_coeffs(double lambda, double J, double I0, double omega0) {
    if (!(J > 0.0)) throw DomainError("make_coeffs: J must be positive");
    if (omega0 == 0.0 || !std::isfinite(omega0)) throw DomainError("make_coeffs: omega0 must be nonzero");
    if (!std::isfinite(lambda) || !std::isfinite(I0) || !std::isfinite(J)) {
        throw DomainError("make_coeffs: non-finite parameter");
    }
    ErmakovCoeffs k;
    k.lambda = lambda;
    k.J = J;
    k.I0 = I0;
    k.omega0 = omega0;
    k.a = J / (omega0 * omega0);
    k.b = 2.0 * I0 / omega0;
    k.c = (lambda * lambda + I0 * I0) / J;
    return k;
}

double coefficient_identity_residual(const ErmakovCoeffs& k) {
    const double ratio = k.lambda / k.omega0;
    return std::abs(4.0 * k.a * k.c - k.b * k.b - 4.0 * ratio * ratio) / std::max(1.0, 4.0 * k.a * k.c);
}

AlphaFunction::AlphaFunction(SeedPair pair, ErmakovCoeffs coeffs) : pair_(std::move(pair)), coeffs_(coeffs) {}

AlphaFunction make_alpha(const SeedPair& pair, double lambda, double J, double I0) {
    return AlphaFunction(pair, make_coeffs(lambda, J, I0, pair.omega0()));
}

double AlphaFunction::q(double x) const {
    const SeedSample s = pair_.eval(x);
    const auto [n, m] = rescale(s);
    const auto& k = coeffs_;
    return (k.a * n.v * n.v + k.b * n.v * n.u + k.c * n.u * n.u) * m * m;
}

AlphaSample AlphaFunction::eval(double x) const {
    const SeedSample raw = pair_.eval(x);
    const auto [s, m] = rescale(raw);
    const auto& k = coeffs_;
    const double w = pair_.v0(x) - pair_.epsilon();
    const double ddu = w * s.u;
    const double ddv = w * s.v;

    const double q = k.a * s.v * s.v + k.b * s.v * s.u + k.c * s.u * s.u;
    if (!(q > 0.0)) throw SingularityError("alpha: Q is not positive", x);
    const double dq = 2.0 * k.a * s.v * s.dv + k.b * (s.dv * s.u + s.v * s.du) + 2.0 * k.c * s.u * s.du;
    const double ddq = 2.0 * k.a * (s.dv * s.dv + s.v * ddv) + k.b * (ddv * s.u + 2.0 * s.dv * s.du + s.v * ddu) +
                       2.0 * k.c * (s.du * s.du + s.u * ddu);

    AlphaSample out;
    out.seed = raw;
    out.dq_over_q = dq / q;
    out.ddq_over_q = ddq / q;
    out.inv_q = 1.0 / q / m / m;
    out.q = q * m * m;
    out.alpha = std::sqrt(q) * m;
    out.d_alpha = 0.5 * out.alpha * out.dq_over_q;
    out.dd_alpha = out.alpha * (0.5 * out.ddq_over_q - 0.25 * out.dq_over_q * out.dq_over_q);
    return out;
}

double ermakov_residual(const AlphaFunction& alpha, std::span<const double> grid) {
    const double lambda = alpha.lambda();
    double worst = 0.0;
    for (double x : grid) {
        const AlphaSample s = alpha.eval(x);
        const double w = alpha.pair().v0(x) - alpha.epsilon();
        // lambda^2/alpha^3 written through 1/Q so it cannot overflow.
        const double inverse_cube = lambda * lambda * s.inv_q / s.alpha;
        const double r = s.dd_alpha - w * s.alpha - inverse_cube;
        const double scale = std::max({1.0, std::abs(s.dd_alpha), std::abs(w * s.alpha)});
        worst = std::max(worst, std::abs(r) / scale);
    }
    return worst;
}

double invariant_j_scan(const AlphaFunction& alpha, std::span<const double> grid) {
    const double lambda = alpha.lambda();
    const double J = alpha.coeffs().J;
    double worst = 0.0;
    for (double x : grid) {
        const AlphaSample s = alpha.eval(x);
        const double u = s.seed.u;
        const double du = s.seed.du;
        const double w = u * s.d_alpha - du * s.alpha;
        const double t = lambda * u / s.alpha;
        const double cancel = std::abs(u * s.d_alpha) + std::abs(du * s.alpha);
        const double scale = std::max(J, cancel * cancel + t * t);
        worst = std::max(worst, std::abs(w * w + t * t - J) / scale);
    }
    return worst;
}

QMinimum min_q(const AlphaFunction& alpha, std::span<const double> grid) {
    QMinimum best{std::numeric_limits<double>::infinity(), 0.0};
    for (double x : grid) {
        const double q = alpha.q(x);
        if (q < best.value) best = {q, x};
    }
    return best;
}

JZeroBranch::JZeroBranch(SeedPair pair, double lambda, cplx c_alpha, int sign)
    : pair_(std::move(pair)), lambda_(lambda), c_alpha_(c_alpha), sign_(sign >= 0 ? 1 : -1) {
    if (lambda == 0.0) throw DomainError("JZeroBranch: lambda must be nonzero");
}

JZeroBranch::Sample JZeroBranch::eval(double x) const {
    const SeedSample s = pair_.eval(x);
    const cplx k(0.0, sign_ * 2.0 * lambda_ / pair_.omega0());
    const cplx sq = k * s.v * s.u + c_alpha_ * s.u * s.u;
    const cplx dsq = k * (s.dv * s.u + s.v * s.du) + 2.0 * c_alpha_ * s.u * s.du;
    const cplx a0 = std::sqrt(sq);
    return {a0, dsq / (2.0 * a0)};
}

double JZeroBranch::wronskian_residual(std::span<const double> grid) const {
    double worst = 0.0;
    const cplx i_lambda(0.0, sign_ * lambda_);
    for (double x : grid) {
        const SeedSample s = pair_.eval(x);
        const Sample a = eval(x);
        const cplx w = s.u * a.d_alpha0 - s.du * a.alpha0;
        const cplx expected = i_lambda * s.u / a.alpha0;
        const double cancel = std::abs(s.u * a.d_alpha0) + std::abs(s.du * a.alpha0);
        worst = std::max(worst, std::abs(w - expected) / std::max({1.0, std::abs(expected), cancel}));
    }
    return worst;
}

double JZeroBranch::phase_constancy(std::span<const double> grid) const {
    if (grid.empty()) return 0.0;
    const double x_ref = grid.front();
    const auto inv_sq = [this](double t) {
        const Sample a = eval(t);
        return 1.0 / (a.alpha0 * a.alpha0);
    };
    std::vector<cplx> ratio;
    ratio.reserve(grid.size());
    cplx prev_alpha = eval(x_ref).alpha0;
    double prev_x = x_ref;
    cplx integral = 0.0;
    for (double x : grid) {
        cplx a0 = eval(x).alpha0;
        // Keep the square-root branch continuous along the grid.
        if (std::abs(a0 + prev_alpha) < std::abs(a0 - prev_alpha)) a0 = -a0;
        prev_alpha = a0;
        integral += adaptive_simpson(inv_sq, prev_x, x, {1e-12, 50});
        prev_x = x;
        const cplx phase = std::exp(cplx(0.0, -sign_ * lambda_) * integral);
        ratio.push_back(pair_.eval(x).u / (a0 * phase));
    }
    const cplx ref = ratio.front();
    double worst = 0.0;
    for (const cplx& r : ratio) worst = std::max(worst, std::abs(r - ref) / std::abs(ref));
    return worst;
}

}  // namespace dlab
