#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "charpoly_oracle.hpp"
#include "darboux_lab/error.hpp"
#include "darboux_lab/oracle.hpp"
#include "generators.hpp"

using namespace dlab;

namespace {

// Max over a of min over b of |a - b|, symmetric in the two lists.
double set_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const cplx& z : a) {
        double best = INFINITY;
        std::size_t at = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(z - b[j]) < best) {
                best = std::abs(z - b[j]);
                at = j;
            }
        }
        used[at] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

Tridiagonal random_tridiagonal(gen::Source& src, std::size_t n, bool symmetric) {
    Tridiagonal t;
    t.diag = src.complex_vector(n, 2.0);
    t.lower = src.complex_vector(n - 1, 1.0);
    t.upper = symmetric ? t.lower : src.complex_vector(n - 1, 1.0);
    return t;
}

ComplexField sampled(const PotentialSpec& spec, std::span<const double> grid) {
    ComplexField f;
    f.x.assign(grid.begin(), grid.end());
    for (double x : grid) f.values.emplace_back(spec.v0(x));
    return f;
}

}  // namespace

TEST(Eigen, TwoByTwoSwap) {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    auto e = eig_complex_dense(m);
    std::sort(e.begin(), e.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    EXPECT_NEAR(std::abs(e[0] - cplx(-1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(e[1] - cplx(1.0)), 0.0, 1e-14);
    Tridiagonal t{{0.0, 0.0}, {1.0}, {1.0}};
    auto q = eig_symmetric_tridiagonal(t);
    EXPECT_LT(set_distance(e, q), 1e-14);
}

TEST(Eigen, UpperTriangularGivesDiagonal) {
    gen::Source src(9);
    const std::size_t n = 12;
    ComplexMatrix m(n, n);
    std::vector<cplx> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = src.complex_box(5.0);
        m(i, i) = d[i];
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = src.complex_box(1.0);
    }
    EXPECT_LT(set_distance(eig_complex_dense(m), d), 1e-12);
}

TEST(Eigen, DenseMatchesCharacteristicPolynomialOracle) {
    gen::Source src(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = static_cast<std::size_t>(src.integer(5, 50));
        const Tridiagonal t = random_tridiagonal(src, n, false);
        const auto roots = oracle::tridiagonal_roots(t.diag, t.lower, t.upper);
        EXPECT_LT(set_distance(eig_complex_dense(t.dense()), roots), 1e-8) << "n=" << n;
    }
}

TEST(Eigen, SymmetricQlMatchesOracleAndDense) {
    gen::Source src(4048);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = static_cast<std::size_t>(src.integer(5, 50));
        const Tridiagonal t = random_tridiagonal(src, n, true);
        const auto ql = eig_symmetric_tridiagonal(t);
        const auto roots = oracle::tridiagonal_roots(t.diag, t.lower, t.upper);
        EXPECT_LT(set_distance(ql, roots), 1e-8) << "n=" << n;
        EXPECT_LT(set_distance(ql, eig_complex_dense(t.dense())), 1e-8) << "n=" << n;
    }
}

TEST(Eigen, DenseHandlesFullMatrices) {
    // Similarity transform of a known diagonal by a unit lower-triangular matrix.
    gen::Source src(55);
    const std::size_t n = 20;
    std::vector<cplx> d(n);
    for (auto& z : d) z = src.complex_box(3.0);
    ComplexMatrix L(n, n), Linv(n, n), A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        L(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) L(i, j) = src.complex_box(0.5);
    }
    // Forward substitution for L^{-1}.
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = i == c ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * Linv(k, c);
            Linv(i, c) = s;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += L(i, k) * d[k] * Linv(k, j);
            A(i, j) = s;
        }
    EXPECT_LT(set_distance(eig_complex_dense(A), d), 1e-9);
}

TEST(Eigen, RefinementReachesSmallResidual) {
    gen::Source src(66);
    const Tridiagonal t = random_tridiagonal(src, 40, true);
    const auto exact = eig_symmetric_tridiagonal(t);
    double residual = 1.0;
    const cplx refined = refine_eigenvalue(t, exact[7] + cplx(1e-4, -1e-4), &residual);
    EXPECT_LT(std::abs(refined - exact[7]), 1e-10);
    EXPECT_LT(residual, 1e-9 * norm_inf(t));
}

TEST(Oracle, BuildFdValidation) {
    const auto pt = make_pt(1.0, 3.0);
    EXPECT_THROW(build_fd(pt, interior_grid(pt.domain(), 20)), DomainError);
    std::vector<double> g = interior_grid({0.0, 1.0}, 100);
    g[40] += 1e-4;
    EXPECT_THROW(build_fd(make_oscillator(), g), DomainError);
    const FdHamiltonian h = build_fd(make_oscillator(), interior_grid({-1.0, 1.0}, 99));
    EXPECT_NEAR(h.h, 0.02, 1e-15);
    EXPECT_NEAR(h.off_diagonal, -2500.0, 1e-9);
    EXPECT_NEAR(h.diagonal[49].real(), 5000.0, 1e-9);
}

TEST(Oracle, ParticleInABox) {
    ComplexField v;
    v.x = interior_grid({0.0, M_PI}, 2000);
    v.values.assign(v.x.size(), 0.0);
    const auto e = eig_complex(build_fd(v));
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(e[k].real(), (k + 1.0) * (k + 1.0), 1e-2);
        EXPECT_EQ(e[k].imag(), 0.0);
    }
}

TEST(Oracle, RealPotentialHasRealSpectrum) {
    const auto m = make_morse(1.0, 0.4, 2);
    const auto grid = interior_grid(m.default_window(), 1200);
    const auto e = eig_complex(build_fd(m, grid));
    for (const cplx& z : e) EXPECT_LT(std::abs(z.imag()), 1e-12);
    EXPECT_NEAR(e[0].real(), 2.65, 1e-2);
    EXPECT_NEAR(e[1].real(), 6.45, 1e-2);
    EXPECT_NEAR(e[2].real(), 8.25, 1e-2);
}

TEST(Oracle, DenseAndTridiagonalPathsAgreeOnComplexPotential) {
    const auto pt = make_pt(1.0, 3.0);
    const auto pair = make_seed_pair(pt, 8.075, seed_window(pt));
    const AlphaFunction a = make_alpha(pair, std::sqrt(1.34), 1.34, -2.13);
    const ComplexField v = complex_potential(a, interior_grid(pt.domain(), 200));
    const FdHamiltonian h = build_fd(v);
    const auto dense = eig_complex(h, {EigMode::Dense});
    const auto ql = eig_complex(h, {EigMode::Tridiagonal});
    for (int k = 0; k < 10; ++k) EXPECT_LT(std::abs(dense[k] - ql[k]), 1e-8 * std::max(1.0, std::abs(dense[k])));
    EigOptions capped{EigMode::Dense, 100};
    EXPECT_THROW(eig_complex(h, capped), DomainError);
}

TEST(Oracle, GridConvergenceIsSecondOrder) {
    const auto m = make_morse(1.0, 0.4, 2);
    const Window w = m.default_window();
    const auto err = [&](int n) {
        const auto e = eig_complex(build_fd(m, interior_grid(w, n)));
        return std::abs(e[0].real() - 2.65);
    };
    const double ratio = err(600) / err(1201);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
}

TEST(Oracle, SpectrumMatchPassAndFail) {
    const auto m = make_morse(1.0, 0.4, 2);
    const auto pred = predict_spectrum(m, 0.0);
    const std::vector<cplx> computed{cplx(1e-4, 1e-8), 2.6501, 6.4499, 8.2502, 7.5, cplx(9.0, 0.5)};
    const SpectrumReport ok = spectrum_match(pred, computed, 1e-2, 1e-6, m.morse().depth() - 0.1);
    EXPECT_TRUE(ok.pass);
    ASSERT_EQ(ok.spurious.size(), 1u);
    EXPECT_EQ(ok.spurious[0], cplx(7.5));
    SpectrumPrediction shifted = pred;
    for (auto& l : shifted.levels) l.energy += 100.0;
    EXPECT_FALSE(spectrum_match(shifted, computed, 1e-2, 1e-6, 8.31).pass);
    const std::vector<cplx> leaky{cplx(0.0, 1e-3), 2.65, 6.45, 8.25};
    EXPECT_FALSE(spectrum_match(pred, leaky, 1e-2, 1e-6, 8.31).pass);
}

TEST(Oracle, SpectrumMatchWithMultiplicity) {
    const auto m = make_morse(1.0, 0.4, 2);
    const auto pred = predict_spectrum(m, 6.45);
    const std::vector<cplx> two{2.65, 6.449, 6.451, 8.25};
    const std::vector<cplx> one{2.65, 6.449, 8.25, 8.30};
    EXPECT_TRUE(spectrum_match(pred, two, 1e-2, 1e-6, 8.31).pass);
    EXPECT_FALSE(spectrum_match(pred, one, 1e-2, 1e-6, 8.31).pass);
    // A split Jordan pair is judged by its centroid.
    const std::vector<cplx> split{2.65, cplx(6.45, 5e-3), cplx(6.45, -5e-3), 8.25};
    const SpectrumReport r = spectrum_match(pred, split, 1e-2, 1e-6, 8.31);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.max_split, 5e-3, 1e-15);
    EXPECT_EQ(r.max_imag, 0.0);
}

TEST(Oracle, SchrodingerResidualOnKnownSolution) {
    ComplexField v, psi;
    v.x = interior_grid({0.0, M_PI}, 2000);
    psi.x = v.x;
    v.values.assign(v.x.size(), 0.0);
    for (double x : psi.x) psi.values.emplace_back(std::sin(x));
    EXPECT_LT(schrodinger_residual(psi, 1.0, v), 1e-8);
    EXPECT_GT(schrodinger_residual(psi, 1.1, v), 1e-2);
    ComplexField small = psi;
    small.x.resize(500);
    small.values.resize(500);
    EXPECT_THROW(schrodinger_residual(small, 1.0, small), DomainError);
    ComplexField moved = v;
    moved.x[5] += 1e-3;
    EXPECT_THROW(schrodinger_residual(psi, 1.0, moved), DomainError);
}

TEST(Oracle, BinormOfRealNormalizedStates) {
    for (const auto& spec : {make_pt(1.0, 3.0), make_oscillator()}) {
        const auto grid = interior_grid(fd_window(spec), 2001);
        for (int n = 0; n < 3; ++n) {
            const RealField phi = bound_state(spec, n, grid);
            ComplexField f;
            f.x = grid;
            f.values.assign(phi.values.begin(), phi.values.end());
            EXPECT_NEAR(std::abs(binorm(f) - 1.0), 0.0, 1e-8);
        }
    }
}

TEST(Oracle, InterlacingOfTransformedStates) {
    const auto pt = make_pt(1.0, 3.0);
    const AlphaFunction p = make_alpha(make_seed_pair(pt, 0.25, seed_window(pt)), std::sqrt(M_PI / 4), M_PI / 4, 0.0);
    const auto m = make_morse(1.0, 0.4, 2);
    const AlphaFunction q = make_alpha(make_seed_pair(m, 0.0, seed_window(m)), 1.0, 1.0, 1.0);
    for (int n = 0; n < 3; ++n) {
        const auto a = interlacing_check(transform_bound_state(p, pt, n, interior_grid(pt.domain(), 4001)).field);
        EXPECT_TRUE(a.holds) << "pt n=" << n << " " << a.note;
    }
    for (int n = 0; n < 2; ++n) {
        const auto b = interlacing_check(transform_bound_state(q, m, n, interior_grid(m.default_window(), 4001)).field);
        EXPECT_TRUE(b.holds) << "morse n=" << n << " " << b.note;
    }
    const AlphaFunction r = make_alpha(make_seed_pair(m, 0.0, seed_window(m)), 0.0, 1.0, 1.0);
    const auto c = interlacing_check(transform_bound_state(r, m, 2, interior_grid(m.default_window(), 4001)).field);
    EXPECT_TRUE(c.vacuous);
    EXPECT_TRUE(c.holds);
    EXPECT_TRUE(c.imag_zeros.empty());
    EXPECT_EQ(c.real_zeros.size(), 2u);
}

TEST(Oracle, InterlacingDetectsViolation) {
    ComplexField f;
    f.x = interior_grid({0.0, 4.0 * M_PI}, 2000);
    // Im has no zeros between the zeros of Re.
    for (double x : f.x) f.values.emplace_back(std::sin(x), 2.0 + std::cos(x));
    const auto r = interlacing_check(f, 1e-3);
    EXPECT_FALSE(r.holds);
    EXPECT_FALSE(r.vacuous);
    ComplexField g;
    g.x = f.x;
    for (double x : g.x) g.values.emplace_back(std::exp(-x), 0.0);
    EXPECT_TRUE(interlacing_check(g).vacuous);
}
