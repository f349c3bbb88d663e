#include "darboux_lab/potentials.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "darboux_lab/error.hpp"
#include "darboux_lab/quadrature.hpp"
#include "darboux_lab/specfun.hpp"

namespace dlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Terminating 2F1 polynomial; always exact for the bound-state parameters.
double poly_2f1(double a, double b, double c, double z) {
    const auto r = specfun::gauss_2f1(a, b, c, z);
    if (!r.converged) throw NumericalError("bound state: 2F1 polynomial did not terminate");
    return r.value;
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::Morse:
            return "morse";
        case Family::TrigPoschlTeller:
            return "pt";
        case Family::Oscillator:
            return "oscillator";
    }
    return "unknown";
}

const MorseParams& PotentialSpec::morse() const {
    if (family_ != Family::Morse) throw DomainError("PotentialSpec: not a Morse potential");
    return morse_;
}

const PoschlTellerParams& PotentialSpec::poschl_teller() const {
    if (family_ != Family::TrigPoschlTeller) throw DomainError("PotentialSpec: not a Poschl-Teller potential");
    return pt_;
}

Window PotentialSpec::domain() const {
    if (family_ == Family::TrigPoschlTeller) {
        const double edge = std::numbers::pi / (2.0 * pt_.u0);
        return {-edge, edge};
    }
    return {-kInf, kInf};
}

Window PotentialSpec::default_window() const {
    switch (family_) {
        case Family::Morse:
            return {-4.0 / morse_.gamma, 16.0 / morse_.gamma};
        case Family::TrigPoschlTeller:
            return domain();
        case Family::Oscillator:
            return {-8.0, 8.0};
    }
    return domain();
}

std::optional<int> PotentialSpec::n_bound() const {
    if (family_ == Family::Morse) return morse_.n_max + 1;
    return std::nullopt;
}

double PotentialSpec::v0(double x) const {
    switch (family_) {
        case Family::Morse: {
            const double t = 1.0 - std::exp(-morse_.gamma * x);
            return morse_.depth() * t * t;
        }
        case Family::TrigPoschlTeller: {
            const Window dom = domain();
            if (!(x > dom.lo && x < dom.hi)) throw DomainError("eval_v0: x outside the Poschl-Teller well");
            const double c = std::cos(pt_.u0 * x);
            return pt_.u0 * pt_.u0 * pt_.r * (pt_.r - 1.0) / (c * c);
        }
        case Family::Oscillator:
            return x * x;
    }
    return 0.0;
}

double PotentialSpec::energy(int n) const {
    if (n < 0) throw DomainError("energy: level index must be nonnegative");
    switch (family_) {
        case Family::Morse: {
            if (n > morse_.n_max) throw DomainError("energy: Morse level index exceeds N");
            const double g2 = morse_.gamma * morse_.gamma;
            return g2 * ((2.0 * n + 1.0) * morse_.d() - (n + 0.5) * (n + 0.5));
        }
        case Family::TrigPoschlTeller:
            return pt_.u0 * pt_.u0 * (n + pt_.r) * (n + pt_.r);
        case Family::Oscillator:
            return 2.0 * n + 1.0;
    }
    return 0.0;
}

std::string PotentialSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (family_) {
        case Family::Morse:
            os << "morse(gamma=" << morse_.gamma << ", delta=" << morse_.delta << ", N=" << morse_.n_max << ")";
            break;
        case Family::TrigPoschlTeller:
            os << "pt(u0=" << pt_.u0 << ", r=" << pt_.r << ")";
            break;
        case Family::Oscillator:
            os << "oscillator";
            break;
    }
    return os.str();
}

PotentialSpec make_morse(double gamma, double delta, int n_max) {
    if (!(gamma > 0.0)) throw DomainError("make_morse: gamma must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("make_morse: delta must lie in (0, 1)");
    if (n_max < 0) throw DomainError("make_morse: N must be nonnegative");
    PotentialSpec s;
    s.family_ = Family::Morse;
    s.morse_ = {gamma, delta, n_max};
    return s;
}

PotentialSpec make_pt(double u0, double r) {
    if (!(u0 > 0.0)) throw DomainError("make_pt: U0 must be positive");
    if (!(r > 1.0)) throw DomainError("make_pt: r must exceed 1");
    PotentialSpec s;
    s.family_ = Family::TrigPoschlTeller;
    s.pt_ = {u0, r};
    return s;
}

PotentialSpec make_oscillator() {
    PotentialSpec s;
    s.family_ = Family::Oscillator;
    return s;
}

double eval_v0(const PotentialSpec& spec, double x) { return spec.v0(x); }

double energy(const PotentialSpec& spec, int n) { return spec.energy(n); }

BoundState::BoundState(const PotentialSpec& spec, int n) : spec_(spec), n_(n), energy_(spec.energy(n)) {
    switch (spec_.family()) {
        case Family::Morse: {
            const auto& m = spec_.morse();
            const double d = m.d();
            // C_n^2 = gamma (2d - 1 - 2n) n! / Gamma(2d - n)
            log_norm_ = 0.5 * (std::log(m.gamma) + std::log(2.0 * d - 1.0 - 2.0 * n) +
                               specfun::log_gamma(n + 1.0) - specfun::log_gamma(2.0 * d - n));
            break;
        }
        case Family::TrigPoschlTeller: {
            norm_ = 1.0;
            const Window dom = spec_.domain();
            const auto sq = [this](double x) {
                const double v = eval(x).value;
                return v * v;
            };
            const double integral = adaptive_simpson(sq, dom.lo, dom.hi, {1e-14, 60});
            norm_ = 1.0 / std::sqrt(integral);
            break;
        }
        case Family::Oscillator:
            break;
    }
}

BoundSample BoundState::eval(double x) const {
    switch (spec_.family()) {
        case Family::Morse: {
            const auto& m = spec_.morse();
            const double d = m.d();
            const double y = 2.0 * d * std::exp(-m.gamma * x);
            const double an = d - 0.5 - n_;
            const double k = 2.0 * an;
            const double pref = std::exp(log_norm_ - 0.5 * y + an * std::log(y));
            const double lag = specfun::laguerre(n_, k, y);
            const double dlag = n_ > 0 ? -specfun::laguerre(n_ - 1, k + 1.0, y) : 0.0;
            const double value = pref * lag;
            const double d_dy = value * (-0.5 + an / y) + pref * dlag;
            return {value, -m.gamma * y * d_dy};
        }
        case Family::TrigPoschlTeller: {
            const auto& p = spec_.poschl_teller();
            const Window dom = spec_.domain();
            if (x <= dom.lo || x >= dom.hi) return {0.0, 0.0};
            const double s = std::sin(p.u0 * x);
            const double c = std::cos(p.u0 * x);
            const double z = s * s;
            const double cr = std::pow(c, p.r);
            const double cr1 = std::pow(c, p.r - 1.0);
            const int m = n_ / 2;
            if (n_ % 2 == 0) {
                const double f = poly_2f1(-m, p.r + m, 0.5, z);
                const double df = m == 0 ? 0.0 : (-m) * (p.r + m) / 0.5 * poly_2f1(-m + 1, p.r + m + 1, 1.5, z);
                const double value = cr * f;
                const double deriv = p.u0 * (-p.r * cr1 * s * f + cr * 2.0 * s * c * df);
                return {norm_ * value, norm_ * deriv};
            }
            const double g = poly_2f1(-m, p.r + m + 1, 1.5, z);
            const double dg = m == 0 ? 0.0 : (-m) * (p.r + m + 1) / 1.5 * poly_2f1(-m + 1, p.r + m + 2, 2.5, z);
            const double value = cr * s * g;
            const double deriv = p.u0 * (-p.r * cr1 * s * s * g + cr * c * g + cr * s * 2.0 * s * c * dg);
            return {norm_ * value, norm_ * deriv};
        }
        case Family::Oscillator: {
            // Normalized Hermite functions by upward recurrence.
            double prev = 0.0;
            double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
            for (int k = 0; k < n_; ++k) {
                const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
                prev = cur;
                cur = next;
            }
            // phi_n' = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1}
            const double next = std::sqrt(2.0 / (n_ + 1.0)) * x * cur - std::sqrt(n_ / (n_ + 1.0)) * prev;
            const double deriv = std::sqrt(n_ / 2.0) * prev - std::sqrt((n_ + 1.0) / 2.0) * next;
            return {cur, deriv};
        }
    }
    return {};
}

RealField bound_state(const PotentialSpec& spec, int n, std::span<const double> grid) {
    const Window dom = spec.domain();
    for (double x : grid) {
        if (!(x > dom.lo && x < dom.hi)) throw DomainError("bound_state: grid point outside the domain");
    }
    const BoundState phi(spec, n);
    RealField out;
    out.x.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = phi.eval(grid[i]).value;
    out.meta = spec.describe() + " bound state n=" + std::to_string(n);
    return out;
}

}  // namespace dlab
