#include "darboux_lab/ode.hpp"

#include <algorithm>
#include <cmath>

#include "darboux_lab/error.hpp"

namespace dlab {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

PairOdeTable::PairOdeTable(Coefficient k, double x0, const PairState& initial, const Window& window,
                           OdeOptions opts)
    : k_(std::move(k)), x0_(x0), opts_(opts) {
    if (!(window.lo <= x0 && x0 <= window.hi)) throw DomainError("PairOdeTable: x0 outside the window");
    right_.push_back({x0, initial});
    left_.push_back({x0, initial});
    double hi = x0;
    double lo = x0;
    integrate(window.hi, right_, hi);
    integrate(window.lo, left_, lo);
    covered_ = {lo, hi};
}

PairState PairOdeTable::step(double x, const PairState& y, double h, PairState* err) const {
    auto f = [this](double t, const PairState& s) {
        const double kk = k_(t);
        return PairState{s[1], kk * s[0], s[3], kk * s[2]};
    };
    auto axpy = [](const PairState& base, std::initializer_list<std::pair<double, const PairState*>> terms,
                   double hh) {
        PairState out = base;
        for (const auto& [w, v] : terms) {
            for (std::size_t i = 0; i < 4; ++i) out[i] += hh * w * (*v)[i];
        }
        return out;
    };
    const PairState k1 = f(x, y);
    const PairState k2 = f(x + c2 * h, axpy(y, {{a21, &k1}}, h));
    const PairState k3 = f(x + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    const PairState k4 = f(x + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    const PairState k5 = f(x + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    const PairState k6 = f(x + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    const PairState y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    if (err != nullptr) {
        const PairState k7 = f(x + h, y5);
        for (std::size_t i = 0; i < 4; ++i) {
            (*err)[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        }
    }
    return y5;
}

void PairOdeTable::integrate(double x_end, std::vector<Node>& nodes, double& reached) {
    const double dir = x_end >= x0_ ? 1.0 : -1.0;
    double x = x0_;
    PairState y = nodes.back().y;
    double h = dir * opts_.initial_step;
    int steps = 0;
    while (dir * (x_end - x) > 0.0) {
        if (++steps > opts_.max_steps) {
            truncated_ = true;
            break;
        }
        if (dir * (x + h - x_end) > 0.0) h = x_end - x;
        PairState err{};
        const PairState y_new = step(x, y, h, &err);
        // Error is measured per solution against its own (value, slope) size,
        // which stays meaningful across nodes of either member.
        double norm = 0.0;
        for (std::size_t s = 0; s < 2; ++s) {
            const double scale = opts_.rel_tol *
                                 std::max(std::abs(y[2 * s]) + std::abs(y[2 * s + 1]),
                                          std::abs(y_new[2 * s]) + std::abs(y_new[2 * s + 1]));
            for (std::size_t i = 2 * s; i < 2 * s + 2; ++i) norm = std::max(norm, std::abs(err[i]) / scale);
        }
        if (!std::isfinite(norm)) {
            truncated_ = true;
            break;
        }
        if (norm <= 1.0) {
            x += h;
            y = y_new;
            nodes.push_back({x, y});
        }
        const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        h *= factor;
        if (std::abs(h) < opts_.min_step * std::max(1.0, std::abs(x))) {
            truncated_ = true;
            break;
        }
    }
    reached = x;
}

PairState PairOdeTable::eval(double x) const {
    if (x < covered_.lo || x > covered_.hi) throw DomainError("PairOdeTable: x outside the integrated window");
    const std::vector<Node>& nodes = x >= x0_ ? right_ : left_;
    // Last node between x0 and x (inclusive).
    std::size_t idx = 0;
    if (x >= x0_) {
        auto it = std::upper_bound(nodes.begin(), nodes.end(), x,
                                   [](double v, const Node& n) { return v < n.x; });
        idx = static_cast<std::size_t>(std::distance(nodes.begin(), it)) - 1;
    } else {
        auto it = std::upper_bound(nodes.begin(), nodes.end(), x,
                                   [](double v, const Node& n) { return v > n.x; });
        idx = static_cast<std::size_t>(std::distance(nodes.begin(), it)) - 1;
    }
    const Node& n = nodes[idx];
    if (x == n.x) return n.y;
    return step(n.x, n.y, x - n.x, nullptr);
}

}  // namespace dlab
