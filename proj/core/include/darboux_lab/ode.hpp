#pragma once

#include <array>
#include <functional>
#include <vector>

#include "darboux_lab/grid.hpp"

namespace dlab {

struct OdeOptions {
    double rel_tol = 1e-12;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    int max_steps = 2'000'000;
};

/// Two solutions (u, u', v, v') of u'' = k(x) u integrated together.
using PairState = std::array<double, 4>;

/// Fundamental system of u'' = k(x) u tabulated by an adaptive Dormand-Prince
/// 5(4) integrator run outward from x0 in both directions. Values between
/// stored steps are obtained by one extra step from the neighbouring node on
/// the x0 side, which is never longer than the step accepted there.
class PairOdeTable {
public:
    using Coefficient = std::function<double(double)>;

    PairOdeTable(Coefficient k, double x0, const PairState& initial, const Window& window,
                 OdeOptions opts = {});

    PairState eval(double x) const;
    /// Interval actually covered; narrower than requested when the step size
    /// underflowed (e.g. close to an infinite wall).
    Window covered() const { return covered_; }
    bool truncated() const { return truncated_; }
    std::size_t node_count() const { return right_.size() + left_.size(); }

private:
    struct Node {
        double x;
        PairState y;
    };

    void integrate(double x_end, std::vector<Node>& nodes, double& reached);
    PairState step(double x, const PairState& y, double h, PairState* err) const;

    Coefficient k_;
    double x0_;
    OdeOptions opts_;
    std::vector<Node> right_;  // increasing x, starts at x0
    std::vector<Node> left_;   // decreasing x, starts at x0
    Window covered_{};
    bool truncated_ = false;
};

}  // namespace dlab
