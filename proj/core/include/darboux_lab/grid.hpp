#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;

/// Closed real interval [lo, hi].
struct Window {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Uniform grid of n abscissas strictly inside a window:
/// x_i = lo + i h, i = 1..n, h = (hi - lo) / (n + 1).
/// The window endpoints act as Dirichlet walls for the FD oracle.
std::vector<double> interior_grid(const Window& w, int n);

/// Spacing of a uniform grid; throws DomainError if the grid is not uniform.
double uniform_spacing(std::span<const double> grid, double rel_tol = 1e-9);

bool is_symmetric_about_zero(std::span<const double> grid, double tol = 1e-12);

struct RealField {
    std::vector<double> x;
    std::vector<double> values;
    std::string meta;
};

struct ComplexField {
    std::vector<double> x;
    std::vector<cplx> values;
    std::string meta;
};

}  // namespace dlab
