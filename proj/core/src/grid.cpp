#include "darboux_lab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "darboux_lab/error.hpp"

namespace dlab {

std::vector<double> interior_grid(const Window& w, int n) {
    if (n < 1) throw DomainError("interior_grid: need at least one point");
    if (!(w.hi > w.lo)) throw DomainError("interior_grid: empty window");
    const double h = w.width() / (n + 1);
    std::vector<double> x(static_cast<std::size_t>(n));
    // Each half is measured from its own end, so a window symmetric about 0
    // yields an exactly mirror-symmetric grid.
    for (int i = 1; i <= n; ++i) {
        double xi = 2 * i < n + 1 ? w.lo + i * h : w.hi - (n + 1 - i) * h;
        if (2 * i == n + 1) xi = 0.5 * (w.lo + w.hi);
        x[static_cast<std::size_t>(i - 1)] = xi;
    }
    return x;
}

double uniform_spacing(std::span<const double> grid, double rel_tol) {
    if (grid.size() < 2) throw DomainError("uniform_spacing: need at least two abscissas");
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    if (!(h > 0.0)) throw DomainError("uniform_spacing: abscissas must increase");
    const double scale = std::max(std::abs(grid.front()), std::abs(grid.back()));
    const double tol = std::max(rel_tol * h, 1e-12 * scale);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (std::abs(grid[i] - grid[i - 1] - h) > tol) {
            throw DomainError("uniform_spacing: grid is not uniform");
        }
    }
    return h;
}

bool is_symmetric_about_zero(std::span<const double> grid, double tol) {
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(grid[i] + grid[n - 1 - i]) > tol * std::max(1.0, std::abs(grid[i]))) return false;
    }
    return true;
}

}  // namespace dlab
