#pragma once

#include <complex>
#include <span>

#include "darboux_lab/grid.hpp"
#include "darboux_lab/seeds.hpp"

namespace dlab {

/// Coefficients of Q = a v^2 + b v u_p + c u_p^2 fixed by (lambda, J, I0, omega0):
/// a = J / omega0^2, b = 2 I0 / omega0, c = (lambda^2 + I0^2) / J.
struct ErmakovCoeffs {
    double lambda = 0.0;
    double J = 1.0;
    double I0 = 0.0;
    double omega0 = 1.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Throws DomainError unless J > 0 and omega0 != 0.
ErmakovCoeffs make_coeffs(double lambda, double J, double I0, double omega0);

/// |4ac - b^2 - 4 (lambda/omega0)^2| / max(1, 4ac).
double coefficient_identity_residual(const ErmakovCoeffs& k);

/// Everything the Darboux layer needs at one abscissa. Q and its
/// derivatives appear only as ratios, so the sample stays finite where the
/// seeds themselves are exponentially large.
struct AlphaSample {
    double alpha = 0.0;
    double d_alpha = 0.0;
    double dd_alpha = 0.0;
    double dq_over_q = 0.0;   // Q'/Q
    double ddq_over_q = 0.0;  // Q''/Q
    double inv_q = 0.0;       // 1/Q
    double q = 0.0;           // may overflow to +inf
    SeedSample seed;          // u_p, v at the same abscissa
};

/// alpha = +sqrt(Q) built from a seed pair.
class AlphaFunction {
public:
    AlphaFunction(SeedPair pair, ErmakovCoeffs coeffs);

    const SeedPair& pair() const { return pair_; }
    const ErmakovCoeffs& coeffs() const { return coeffs_; }
    double lambda() const { return coeffs_.lambda; }
    double epsilon() const { return pair_.epsilon(); }
    Window window() const { return pair_.window(); }

    /// Throws SingularityError where Q <= 0 (possible only for lambda = 0).
    AlphaSample eval(double x) const;
    /// Sign-aware value of Q at x without the positivity check.
    double q(double x) const;

private:
    SeedPair pair_;
    ErmakovCoeffs coeffs_;
};

/// Convenience: pair and coefficients with omega0 taken from the pair.
AlphaFunction make_alpha(const SeedPair& pair, double lambda, double J, double I0);

/// max |alpha'' - (V0 - eps) alpha - lambda^2/alpha^3| / max(1, |alpha''|).
double ermakov_residual(const AlphaFunction& alpha, std::span<const double> grid);

/// max |W^2(u_p, alpha) + (lambda u_p/alpha)^2 - J| / scale, where scale is
/// J or, if larger, the magnitude of the cancelling terms.
double invariant_j_scan(const AlphaFunction& alpha, std::span<const double> grid);

struct QMinimum {
    double value = 0.0;
    double location = 0.0;
};

/// Smallest Q on the grid.
QMinimum min_q(const AlphaFunction& alpha, std::span<const double> grid);

/// The J = 0 branch: alpha0^2 = i sign (2 lambda/omega0) v u_p + c_alpha u_p^2.
class JZeroBranch {
public:
    JZeroBranch(SeedPair pair, double lambda, cplx c_alpha = 1.0, int sign = +1);

    struct Sample {
        cplx alpha0;
        cplx d_alpha0;
    };
    /// alpha0 on the principal square-root branch.
    Sample eval(double x) const;

    /// max |W(u_p, alpha0) - i sign lambda u_p / alpha0| over the grid, relative
    /// to max(1, |lambda u_p/alpha0|, |u_p alpha0'| + |u_p' alpha0|).
    double wronskian_residual(std::span<const double> grid) const;

    /// Relative spread of u_p / (alpha0 exp[-i sign lambda int alpha0^-2]) over
    /// the grid, with the square-root branch continued along the grid.
    double phase_constancy(std::span<const double> grid) const;

private:
    SeedPair pair_;
    double lambda_;
    cplx c_alpha_;
    int sign_;
};

}  // namespace dlab
