#pragma once

#include <memory>
#include <span>
#include <string>

#include "darboux_lab/grid.hpp"
#include "darboux_lab/ode.hpp"
#include "darboux_lab/potentials.hpp"

namespace dlab {

enum class SeedBackend { Analytic, Numeric };
enum class BackendChoice { Auto, Analytic, Numeric };

std::string to_string(SeedBackend b);

/// Values and first derivatives of the fundamental pair at one abscissa.
struct SeedSample {
    double u = 0.0;
    double du = 0.0;
    double v = 0.0;
    double dv = 0.0;
};

namespace detail {
class SeedImpl {
public:
    virtual ~SeedImpl() = default;
    virtual SeedSample eval(double x) const = 0;
};
}  // namespace detail

/// Fundamental pair (u_p, v) of -u'' + V0 u = eps u with W(u_p, v) = omega0.
/// Immutable; copies share the underlying evaluator.
class SeedPair {
public:
    SeedPair(PotentialSpec spec, double epsilon, double omega0, SeedBackend backend, Window window,
             std::shared_ptr<const detail::SeedImpl> impl);

    const PotentialSpec& spec() const { return spec_; }
    double epsilon() const { return epsilon_; }
    double omega0() const { return omega0_; }
    SeedBackend backend() const { return backend_; }
    /// Region on which eval is valid.
    Window window() const { return window_; }

    SeedSample eval(double x) const;
    double v0(double x) const { return spec_.v0(x); }

private:
    PotentialSpec spec_;
    double epsilon_;
    double omega0_;
    SeedBackend backend_;
    Window window_;
    std::shared_ptr<const detail::SeedImpl> impl_;
};

/// Closed-form pair: Kummer functions in y = 2d exp(-gamma x) for Morse
/// (requires eps < G0), Gauss functions in sin^2(U0 x) for Poschl-Teller
/// (requires eps >= 0). Throws BackendError if a series fails to converge
/// anywhere on the window.
SeedPair analytic_pair(const PotentialSpec& spec, double epsilon, const Window& window);
SeedPair analytic_pair(const PotentialSpec& spec, double epsilon);

/// ODE pair with u_p(x0) = 1, u_p'(x0) = 0, v(x0) = 0, v'(x0) = omega0.
SeedPair numeric_pair(const PotentialSpec& spec, double epsilon, double x0, double omega0,
                      const Window& window, OdeOptions opts = {});

/// ODE continuation of arbitrary initial data at x0.
SeedPair numeric_pair_from(const PotentialSpec& spec, double epsilon, double x0, const SeedSample& initial,
                           const Window& window, OdeOptions opts = {});

/// Window usable for the pair: the default truncation window, pulled in from
/// infinite walls by a small margin.
Window seed_window(const PotentialSpec& spec);

/// Analytic when possible. Auto falls back to an ODE continuation of the
/// analytic data at the symmetry point (or to the canonical ODE pair when
/// no analytic form exists).
SeedPair make_seed_pair(const PotentialSpec& spec, double epsilon, const Window& window,
                        BackendChoice choice = BackendChoice::Auto);

/// q(x) = integral of u_p^-2 from x_ref to x. Throws SingularityError when
/// u_p vanishes in between.
double q_integral(const SeedPair& pair, double x, double x_ref);

/// Largest mixed-relative departure of W(u_p, v) from omega0 on the grid:
/// |W - omega0| / max(|omega0|, |u v'| + |u' v|). The second scale is the
/// size of the cancelling products, the best attainable reference where both
/// members are exponentially large.
double wronskian_deviation(const SeedPair& pair, std::span<const double> grid);

}  // namespace dlab
