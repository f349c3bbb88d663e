#include "darboux_lab/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "darboux_lab/error.hpp"
#include "darboux_lab/quadrature.hpp"
#include "darboux_lab/specfun.hpp"

namespace dlab {
namespace {

double snap_nonpositive_integer(double a) {
    return specfun::is_nonpositive_integer(a, 1e-9 * std::max(1.0, std::abs(a))) ? std::round(a) : a;
}

double checked(const specfun::SeriesResult& r, const char* what) {
    if (!r.converged) throw BackendError(std::string("analytic seed: ") + what + " series did not converge");
    return r.value;
}

// u = exp(-y/2) y^s 1F1(A; 1 + 2s; y), A = s + 1/2 - d, and its partner with s -> -s.
class MorseAnalytic final : public detail::SeedImpl {
public:
    MorseAnalytic(const MorseParams& m, double eps) : gamma_(m.gamma), d_(m.d()) {
        sigma_ = std::sqrt(m.depth() - eps) / m.gamma;
        a_u_ = snap_nonpositive_integer(sigma_ + 0.5 - d_);
        a_v_ = snap_nonpositive_integer(-sigma_ + 0.5 - d_);
        c_u_ = 1.0 + 2.0 * sigma_;
        c_v_ = 1.0 - 2.0 * sigma_;
        if (specfun::is_nonpositive_integer(c_v_, 1e-9) && !specfun::is_nonpositive_integer(a_v_, 0.0)) {
            throw BackendError("analytic Morse seed: 1 - 2 sigma is a nonpositive integer");
        }
    }

    SeedSample eval(double x) const override {
        const double y = 2.0 * d_ * std::exp(-gamma_ * x);
        const auto [u, du] = member(sigma_, a_u_, c_u_, y);
        const auto [v, dv] = member(-sigma_, a_v_, c_v_, y);
        return {u, du, v, dv};
    }

private:
    std::pair<double, double> member(double s, double a, double c, double y) const {
        const double m = checked(specfun::kummer_1f1(a, c, y), "1F1");
        const double dm = a == 0.0 ? 0.0 : a / c * checked(specfun::kummer_1f1(a + 1.0, c + 1.0, y), "1F1");
        const double pref = std::exp(-0.5 * y + s * std::log(y));
        const double value = pref * m;
        const double d_dy = value * (-0.5 + s / y) + pref * dm;
        return {value, -gamma_ * y * d_dy};
    }

    double gamma_;
    double d_;
    double sigma_;
    double a_u_, a_v_, c_u_, c_v_;
};

// u = cos^r 2F1(a, b; 1/2; sin^2), v = cos^r sin 2F1(a + 1/2, b + 1/2; 3/2; sin^2).
class PoschlTellerAnalytic final : public detail::SeedImpl {
public:
    PoschlTellerAnalytic(const PoschlTellerParams& p, double eps) : u0_(p.u0), r_(p.r) {
        const double k = std::sqrt(eps) / p.u0;
        a_ = snap_nonpositive_integer(0.5 * (p.r + k));
        b_ = snap_nonpositive_integer(0.5 * (p.r - k));
        av_ = snap_nonpositive_integer(a_ + 0.5);
        bv_ = snap_nonpositive_integer(b_ + 0.5);
    }

    SeedSample eval(double x) const override {
        const double s = std::sin(u0_ * x);
        const double c = std::cos(u0_ * x);
        const double z = s * s;
        const double cr = std::pow(c, r_);
        const double cr1 = std::pow(c, r_ - 1.0);
        const double f = gauss(a_, b_, 0.5, z);
        const double df = a_ * b_ == 0.0 ? 0.0 : a_ * b_ / 0.5 * gauss(a_ + 1.0, b_ + 1.0, 1.5, z);
        const double g = gauss(av_, bv_, 1.5, z);
        const double dg = av_ * bv_ == 0.0 ? 0.0 : av_ * bv_ / 1.5 * gauss(av_ + 1.0, bv_ + 1.0, 2.5, z);
        SeedSample out;
        out.u = cr * f;
        out.du = u0_ * (-r_ * cr1 * s * f + cr * 2.0 * s * c * df);
        out.v = cr * s * g;
        out.dv = u0_ * (-r_ * cr1 * s * s * g + cr * c * g + cr * s * 2.0 * s * c * dg);
        return out;
    }

private:
    static double gauss(double a, double b, double c, double z) {
        return checked(specfun::gauss_2f1(a, b, c, z), "2F1");
    }

    double u0_, r_;
    double a_, b_, av_, bv_;
};

class NumericSeed final : public detail::SeedImpl {
public:
    explicit NumericSeed(PairOdeTable table) : table_(std::move(table)) {}

    SeedSample eval(double x) const override {
        const PairState s = table_.eval(x);
        return {s[0], s[1], s[2], s[3]};
    }

    Window covered() const { return table_.covered(); }

private:
    PairOdeTable table_;
};

double default_x0(const PotentialSpec&) { return 0.0; }

void check_window(const PotentialSpec& spec, const Window& w) {
    const Window dom = spec.domain();
    if (!(w.lo < w.hi)) throw DomainError("seed pair: empty window");
    if (spec.has_walls() && !(w.lo > dom.lo && w.hi < dom.hi)) {
        throw DomainError("seed pair: window must lie strictly inside the walls");
    }
}

}  // namespace

std::string to_string(SeedBackend b) { return b == SeedBackend::Analytic ? "analytic" : "numeric"; }

SeedPair::SeedPair(PotentialSpec spec, double epsilon, double omega0, SeedBackend backend, Window window,
                   std::shared_ptr<const detail::SeedImpl> impl)
    : spec_(std::move(spec)),
      epsilon_(epsilon),
      omega0_(omega0),
      backend_(backend),
      window_(window),
      impl_(std::move(impl)) {}

SeedSample SeedPair::eval(double x) const {
    if (x < window_.lo || x > window_.hi) throw DomainError("SeedPair::eval: x outside the pair's window");
    return impl_->eval(x);
}

Window seed_window(const PotentialSpec& spec) {
    Window w = spec.default_window();
    if (spec.has_walls()) {
        const double margin = 1e-5 * w.width();
        w.lo += margin;
        w.hi -= margin;
    }
    return w;
}

SeedPair analytic_pair(const PotentialSpec& spec, double epsilon) {
    return analytic_pair(spec, epsilon, seed_window(spec));
}

SeedPair analytic_pair(const PotentialSpec& spec, double epsilon, const Window& window) {
    check_window(spec, window);
    std::shared_ptr<const detail::SeedImpl> impl;
    double omega0 = 0.0;
    switch (spec.family()) {
        case Family::Morse: {
            const auto& m = spec.morse();
            if (!(epsilon < m.depth())) {
                throw BackendError("analytic Morse seed requires eps < G0; use the numeric backend");
            }
            impl = std::make_shared<MorseAnalytic>(m, epsilon);
            omega0 = 2.0 * std::sqrt(m.depth() - epsilon);
            break;
        }
        case Family::TrigPoschlTeller: {
            if (!(epsilon >= 0.0)) {
                throw BackendError("analytic Poschl-Teller seed requires eps >= 0; use the numeric backend");
            }
            impl = std::make_shared<PoschlTellerAnalytic>(spec.poschl_teller(), epsilon);
            omega0 = spec.poschl_teller().u0;
            break;
        }
        case Family::Oscillator:
            throw BackendError("the oscillator family has no analytic seed pair; use the numeric backend");
    }
    // The series are hardest at the window edges (largest y for Morse,
    // z closest to 1 for Poschl-Teller); probing there and at the centre
    // certifies the whole window.
    for (double x : {window.lo, window.hi, 0.5 * (window.lo + window.hi)}) impl->eval(x);
    return SeedPair(spec, epsilon, omega0, SeedBackend::Analytic, window, impl);
}

SeedPair numeric_pair(const PotentialSpec& spec, double epsilon, double x0, double omega0, const Window& window,
                      OdeOptions opts) {
    if (omega0 == 0.0) throw DomainError("numeric_pair: omega0 must be nonzero");
    return numeric_pair_from(spec, epsilon, x0, {1.0, 0.0, 0.0, omega0}, window, opts);
}

SeedPair numeric_pair_from(const PotentialSpec& spec, double epsilon, double x0, const SeedSample& initial,
                           const Window& window, OdeOptions opts) {
    check_window(spec, window);
    if (!window.contains(x0)) throw DomainError("numeric_pair: x0 outside the window");
    const double omega0 = initial.u * initial.dv - initial.du * initial.v;
    if (omega0 == 0.0) throw DomainError("numeric_pair: initial data are linearly dependent");
    PairOdeTable table([spec, epsilon](double x) { return spec.v0(x) - epsilon; }, x0,
                       {initial.u, initial.du, initial.v, initial.dv}, window, opts);
    const Window covered = table.covered();
    auto impl = std::make_shared<NumericSeed>(std::move(table));
    return SeedPair(spec, epsilon, omega0, SeedBackend::Numeric, covered, impl);
}

SeedPair make_seed_pair(const PotentialSpec& spec, double epsilon, const Window& window, BackendChoice choice) {
    const double x0 = default_x0(spec);
    if (choice == BackendChoice::Analytic) return analytic_pair(spec, epsilon, window);
    if (choice == BackendChoice::Numeric || spec.family() == Family::Oscillator) {
        return numeric_pair(spec, epsilon, x0, 1.0, window);
    }
    try {
        return analytic_pair(spec, epsilon, window);
    } catch (const BackendError&) {
        // Continue the analytic basis numerically when it is available at x0.
        try {
            const SeedPair probe = analytic_pair(spec, epsilon, Window{x0 - 1e-3, x0 + 1e-3});
            return numeric_pair_from(spec, epsilon, x0, probe.eval(x0), window);
        } catch (const BackendError&) {
            return numeric_pair(spec, epsilon, x0, 1.0, window);
        }
    }
}

double q_integral(const SeedPair& pair, double x, double x_ref) {
    if (x == x_ref) return 0.0;
    const double lo = std::min(x, x_ref);
    const double hi = std::max(x, x_ref);
    constexpr int kScan = 400;
    double prev = pair.eval(lo).u;
    for (int i = 1; i <= kScan; ++i) {
        const double t = lo + (hi - lo) * i / kScan;
        const double cur = pair.eval(t).u;
        if (cur == 0.0 || prev == 0.0 || (cur > 0.0) != (prev > 0.0)) {
            throw SingularityError("q_integral: u_p vanishes inside the integration range", t);
        }
        prev = cur;
    }
    const auto integrand = [&pair](double t) {
        const double u = pair.eval(t).u;
        return 1.0 / (u * u);
    };
    const double value = adaptive_simpson(integrand, lo, hi, {1e-10, 60});
    return x >= x_ref ? value : -value;
}

double wronskian_deviation(const SeedPair& pair, std::span<const double> grid) {
    double worst = 0.0;
    const double w0 = pair.omega0();
    for (double x : grid) {
        const SeedSample s = pair.eval(x);
        const double w = s.u * s.dv - s.du * s.v;
        const double scale = std::max(std::abs(w0), std::abs(s.u * s.dv) + std::abs(s.du * s.v));
        worst = std::max(worst, std::abs(w - w0) / scale);
    }
    return worst;
}

}  // namespace dlab
