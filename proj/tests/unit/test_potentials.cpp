#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "darboux_lab/error.hpp"
#include "darboux_lab/oracle.hpp"
#include "darboux_lab/potentials.hpp"
#include "darboux_lab/specfun.hpp"

using namespace dlab;

namespace {

double norm_squared(const PotentialSpec& spec, int n) {
    const BoundState phi(spec, n);
    const auto f = [&](double x) {
        const double v = phi.eval(x).value;
        return v * v;
    };
    if (spec.family() == Family::TrigPoschlTeller) {
        const Window d = spec.domain();
        return boost::math::quadrature::tanh_sinh<double>().integrate(f, d.lo, d.hi);
    }
    const Window w = spec.family() == Family::Morse ? Window{-6.0, 40.0} : Window{-15.0, 15.0};
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, w.lo, w.hi, 20, 1e-14);
}

int sign_changes(const RealField& f) {
    int count = 0;
    double prev = 0.0;
    double peak = 0.0;
    for (double v : f.values) peak = std::max(peak, std::abs(v));
    for (double v : f.values) {
        if (std::abs(v) < 1e-10 * peak) continue;
        if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++count;
        prev = v;
    }
    return count;
}

}  // namespace

TEST(Potentials, MorseConstruction) {
    EXPECT_NEAR(make_morse(1.0, 0.4, 2).morse().depth(), 8.41, 1e-13);
    EXPECT_EQ(make_morse(1.0, 0.4, 2).n_bound().value(), 3);
    EXPECT_NEAR(make_morse(1.0, 0.4, 4).morse().depth(), 24.01, 1e-13);
    EXPECT_THROW(make_morse(1.0, 1.5, 2), DomainError);
    EXPECT_THROW(make_morse(0.0, 0.4, 2), DomainError);
    EXPECT_THROW(make_morse(1.0, 0.4, -1), DomainError);
}

TEST(Potentials, PoschlTellerConstruction) {
    const auto pt = make_pt(1.0, 3.0);
    EXPECT_NEAR(pt.domain().lo, -M_PI / 2, 1e-15);
    EXPECT_NEAR(pt.domain().hi, M_PI / 2, 1e-15);
    EXPECT_GT(make_pt(1.0, 4.0).v0(0.3), pt.v0(0.3));
    EXPECT_THROW(make_pt(1.0, 1.0), DomainError);
    EXPECT_THROW(make_pt(-1.0, 3.0), DomainError);
    EXPECT_FALSE(pt.n_bound().has_value());
}

TEST(Potentials, PointValues) {
    EXPECT_EQ(eval_v0(make_morse(1.0, 0.4, 2), 0.0), 0.0);
    EXPECT_NEAR(eval_v0(make_pt(1.0, 3.0), 0.0), 6.0, 1e-15);
    EXPECT_EQ(eval_v0(make_oscillator(), 2.0), 4.0);
    EXPECT_THROW(eval_v0(make_pt(1.0, 3.0), 2.0), DomainError);
    EXPECT_THROW(eval_v0(make_pt(1.0, 3.0), M_PI / 2), DomainError);
}

TEST(Potentials, Energies) {
    const auto m = make_morse(1.0, 0.4, 2);
    EXPECT_NEAR(energy(m, 0), 2.65, 1e-13);
    EXPECT_NEAR(energy(m, 1), 6.45, 1e-13);
    EXPECT_NEAR(energy(m, 2), 8.25, 1e-13);
    EXPECT_THROW(energy(m, 3), DomainError);
    EXPECT_THROW(energy(m, -1), DomainError);
    EXPECT_NEAR(energy(make_morse(1.0, 0.4, 4), 4), 23.85, 1e-13);
    const auto pt = make_pt(1.0, 3.0);
    EXPECT_NEAR(energy(pt, 0), 9.0, 1e-13);
    EXPECT_NEAR(energy(pt, 1), 16.0, 1e-13);
    EXPECT_NEAR(energy(pt, 2), 25.0, 1e-13);
    EXPECT_EQ(energy(make_oscillator(), 3), 7.0);
}

TEST(Potentials, BoundStatesAreNormalized) {
    for (const auto& spec : {make_morse(1.0, 0.4, 2), make_morse(1.0, 0.4, 4), make_pt(1.0, 3.0), make_pt(1.0, 4.0),
                             make_oscillator()}) {
        const int levels = spec.n_bound().value_or(5);
        for (int n = 0; n < levels; ++n) EXPECT_NEAR(norm_squared(spec, n), 1.0, 1e-8) << spec.describe() << " n=" << n;
    }
}

TEST(Potentials, BoundStatesAreOrthogonal) {
    const auto pt = make_pt(1.0, 3.0);
    const BoundState a(pt, 0), b(pt, 2);
    const auto f = [&](double x) { return a.eval(x).value * b.eval(x).value; };
    EXPECT_NEAR(boost::math::quadrature::tanh_sinh<double>().integrate(f, -M_PI / 2, M_PI / 2), 0.0, 1e-10);
    const auto m = make_morse(1.0, 0.4, 4);
    const BoundState c(m, 1), d(m, 3);
    const auto g = [&](double x) { return c.eval(x).value * d.eval(x).value; };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    EXPECT_NEAR(GK::integrate(g, -6.0, 40.0, 20, 1e-14), 0.0, 1e-10);
}

TEST(Potentials, NodeCounting) {
    const std::vector<PotentialSpec> specs{make_morse(1.0, 0.4, 4), make_pt(1.0, 3.0), make_oscillator()};
    for (const auto& spec : specs) {
        const auto grid = interior_grid(spec.default_window(), 4001);
        for (int n = 0; n <= 4; ++n) EXPECT_EQ(sign_changes(bound_state(spec, n, grid)), n) << spec.describe();
    }
    const auto g0 = bound_state(make_morse(1.0, 0.4, 2), 0, interior_grid({-4.0, 16.0}, 500));
    for (double v : g0.values) EXPECT_GE(v, 0.0);
}

TEST(Potentials, PoschlTellerParity) {
    const BoundState phi1(make_pt(1.0, 3.0), 1);
    EXPECT_EQ(phi1.eval(0.0).value, 0.0);
    for (double x : {0.2, 0.9, 1.4}) EXPECT_NEAR(phi1.eval(-x).value, -phi1.eval(x).value, 1e-14);
}

TEST(Potentials, AnalyticDerivativeMatchesDifferenceQuotient) {
    const double h = 1e-5;
    for (const auto& spec : {make_morse(1.0, 0.4, 2), make_pt(1.0, 3.0), make_oscillator()}) {
        for (int n = 0; n < 3; ++n) {
            const BoundState phi(spec, n);
            for (double x : {-0.7, 0.1, 1.1}) {
                const double fd = (phi.eval(x + h).value - phi.eval(x - h).value) / (2.0 * h);
                EXPECT_NEAR(phi.eval(x).derivative, fd, 1e-7 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST(Potentials, BoundStatesSolveTheEquation) {
    for (const auto& spec : {make_morse(1.0, 0.4, 2), make_pt(1.0, 3.0), make_oscillator()}) {
        const auto grid = interior_grid(spec.default_window(), 2000);
        ComplexField v;
        v.x = grid;
        for (double x : grid) v.values.emplace_back(spec.v0(x));
        for (int n = 0; n < 3; ++n) {
            const RealField phi = bound_state(spec, n, grid);
            ComplexField psi;
            psi.x = grid;
            psi.values.assign(phi.values.begin(), phi.values.end());
            EXPECT_LT(schrodinger_residual(psi, spec.energy(n), v), 1e-5) << spec.describe() << " n=" << n;
        }
    }
}

TEST(Potentials, FdSelfConsistency) {
    for (const auto& spec : {make_morse(1.0, 0.4, 2), make_morse(1.0, 0.4, 4), make_pt(1.0, 3.0), make_oscillator()}) {
        const auto pred = hermitian_spectrum(spec, std::min(spec.n_bound().value_or(4), 4));
        const auto rep = verify_spectrum([&](double x) { return cplx(spec.v0(x)); }, fd_window(spec), pred,
                                         spectrum_cutoff(spec, pred));
        EXPECT_TRUE(rep.pass) << spec.describe();
        EXPECT_EQ(rep.max_imag, 0.0);
    }
}

TEST(Potentials, MorseSeriesTerminatesAtBoundEnergies) {
    const auto m = make_morse(1.0, 0.4, 2);
    for (int n = 0; n <= 2; ++n) {
        const double sigma = std::sqrt(m.morse().depth() - m.energy(n)) / m.morse().gamma;
        const double a = sigma + 0.5 - m.morse().d();
        EXPECT_NEAR(a, -n, 1e-12);
        const auto r = specfun::kummer_1f1(std::round(a), 1.0 + 2.0 * sigma, 3.0);
        EXPECT_TRUE(r.converged);
        EXPECT_LE(r.terms_used, n + 2);
    }
}
