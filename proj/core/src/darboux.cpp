#include "darboux_lab/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "darboux_lab/error.hpp"
#include "darboux_lab/parallel.hpp"
#include "darboux_lab/quadrature.hpp"

namespace dlab {
namespace {

constexpr cplx kI(0.0, 1.0);

cplx missing_prefactor(const ErmakovCoeffs& k) { return (k.lambda / k.omega0 - kI * (0.5 * k.b)) / k.c; }

struct LinearAlpha {
    double value;
    double derivative;
};

LinearAlpha linear_alpha(const SeedPair& pair, double gamma_m, int sign, double x) {
    const SeedSample s = pair.eval(x);
    const double g = (sign >= 0 ? 1.0 : -1.0) * gamma_m;
    return {s.v / pair.omega0() + g * s.u, s.dv / pair.omega0() + g * s.du};
}

}  // namespace

BetaSample beta_lambda(const AlphaFunction& alpha, double x) {
    const AlphaSample s = alpha.eval(x);
    const double lambda = alpha.lambda();
    const double lnq2 = s.ddq_over_q - s.dq_over_q * s.dq_over_q;  // (ln Q)''
    BetaSample out;
    out.beta = cplx(-0.5 * s.dq_over_q, lambda * s.inv_q);
    out.d_beta = cplx(-0.5 * lnq2, -lambda * s.dq_over_q * s.inv_q);
    return out;
}

cplx potential_at(const AlphaFunction& alpha, double x) {
    return alpha.pair().v0(x) + 2.0 * beta_lambda(alpha, x).d_beta;
}

ComplexField complex_potential(const AlphaFunction& alpha, std::span<const double> grid) {
    ComplexField f;
    f.x.assign(grid.begin(), grid.end());
    f.values.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { f.values[i] = potential_at(alpha, grid[i]); });
    std::ostringstream meta;
    meta << "V_lambda " << alpha.pair().spec().describe() << " eps=" << alpha.epsilon()
         << " lambda=" << alpha.lambda() << " J=" << alpha.coeffs().J << " I0=" << alpha.coeffs().I0;
    f.meta = meta.str();
    return f;
}

double riccati_residual(const AlphaFunction& alpha, std::span<const double> grid) {
    double worst = 0.0;
    for (double x : grid) {
        const BetaSample b = beta_lambda(alpha, x);
        const double w = alpha.pair().v0(x) - alpha.epsilon();
        const cplx r = -b.d_beta + b.beta * b.beta - w;
        const double scale = std::max(1.0, std::norm(b.beta) + std::abs(w));
        worst = std::max(worst, std::abs(r) / scale);
    }
    return worst;
}

std::string EigenState::label() const {
    if (kind == StateKind::Missing) return "missing";
    return "psi" + std::to_string(source_level + 1);
}

void binormalize(EigenState& state) {
    const double h = uniform_spacing(state.field.x);
    std::vector<cplx> sq(state.field.values.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < sq.size(); ++i) {
        sq[i] = state.field.values[i] * state.field.values[i];
        peak = std::max(peak, std::abs(state.field.values[i]));
    }
    state.raw_binorm = simpson_samples(sq, h);
    if (std::abs(state.raw_binorm) < kZeroBinormThreshold) {
        state.zero_binorm = true;
        return;
    }
    state.zero_binorm = false;
    cplx scale = 1.0 / std::sqrt(state.raw_binorm);
    for (const cplx& v : state.field.values) {
        if (std::abs(v) > 1e-8 * peak) {
            if ((v * scale).real() < 0.0) scale = -scale;
            break;
        }
    }
    for (cplx& v : state.field.values) v *= scale;
}

EigenState transform_bound_state(const AlphaFunction& alpha, const PotentialSpec& spec, int n,
                                 std::span<const double> grid) {
    const BoundState phi(spec, n);
    EigenState st;
    st.kind = StateKind::Transformed;
    st.source_level = n;
    st.energy = phi.energy();
    st.field.x.assign(grid.begin(), grid.end());
    st.field.values.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const BoundSample p = phi.eval(grid[i]);
        st.field.values[i] = p.derivative + beta_lambda(alpha, grid[i]).beta * p.value;
    });
    st.field.meta = "transformed state n=" + std::to_string(n);
    binormalize(st);
    return st;
}

cplx missing_state_at(const AlphaFunction& alpha, double x) {
    const AlphaSample s = alpha.eval(x);
    const cplx k = missing_prefactor(alpha.coeffs());
    return s.inv_q * (k * s.seed.v - kI * s.seed.u);
}

EigenState missing_state(const AlphaFunction& alpha, std::span<const double> grid) {
    if (alpha.lambda() == 0.0) throw DomainError("missing_state: requires lambda != 0");
    EigenState st;
    st.kind = StateKind::Missing;
    st.energy = alpha.epsilon();
    st.field.x.assign(grid.begin(), grid.end());
    st.field.values.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { st.field.values[i] = missing_state_at(alpha, grid[i]); });
    st.field.meta = "missing state";
    binormalize(st);
    return st;
}

double missing_state_log_derivative_residual(const AlphaFunction& alpha, std::span<const double> grid,
                                             double floor) {
    if (alpha.lambda() == 0.0) throw DomainError("missing_state: requires lambda != 0");
    const cplx k = missing_prefactor(alpha.coeffs());
    std::vector<double> magnitude(grid.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        magnitude[i] = std::abs(missing_state_at(alpha, grid[i]));
        peak = std::max(peak, magnitude[i]);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (magnitude[i] <= floor * peak) continue;
        const AlphaSample s = alpha.eval(grid[i]);
        const cplx num = k * s.seed.v - kI * s.seed.u;
        const cplx dnum = k * s.seed.dv - kI * s.seed.du;
        const cplx log_derivative = dnum / num - s.dq_over_q;
        const cplx beta = beta_lambda(alpha, grid[i]).beta;
        worst = std::max(worst, std::abs(log_derivative - beta) / std::max(1.0, std::abs(beta)));
    }
    return worst;
}

std::vector<double> real_family_zeros(const SeedPair& pair, double gamma_m, int sign,
                                      std::span<const double> grid) {
    if (gamma_m < 0.0) throw DomainError("real_family_lambda0: gamma_m must be nonnegative");
    std::vector<double> zeros;
    if (grid.empty()) return zeros;
    const auto value = [&](double x) { return linear_alpha(pair, gamma_m, sign, x).value; };
    double xl = grid[0];
    double fl = value(xl);
    if (fl == 0.0) zeros.push_back(xl);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double xr = grid[i];
        const double fr = value(xr);
        if (fr == 0.0) {
            zeros.push_back(xr);
        } else if (fl != 0.0 && (fl > 0.0) != (fr > 0.0)) {
            double a = xl, b = xr, fa = fl;
            for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = value(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm > 0.0) == (fa > 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            zeros.push_back(0.5 * (a + b));
        }
        xl = xr;
        fl = fr;
    }
    return zeros;
}

RealFamily real_family_lambda0(const SeedPair& pair, double gamma_m, int sign, std::span<const double> grid) {
    RealFamily out;
    out.singularities = real_family_zeros(pair, gamma_m, sign, grid);
    out.potential.x.assign(grid.begin(), grid.end());
    out.potential.values.resize(grid.size());
    const double eps = pair.epsilon();
    parallel_for(grid.size(), [&](std::size_t i) {
        const double x = grid[i];
        const LinearAlpha a = linear_alpha(pair, gamma_m, sign, x);
        const double r = a.derivative / a.value;
        out.potential.values[i] = -pair.v0(x) + 2.0 * eps + 2.0 * r * r;
    });
    std::ostringstream meta;
    meta << "lambda=0 family " << pair.spec().describe() << " eps=" << eps << " gamma_m=" << gamma_m
         << " sign=" << (sign >= 0 ? '+' : '-');
    out.potential.meta = meta.str();
    return out;
}

AreaCheck zero_total_area(const AlphaFunction& alpha, const Window& window) {
    AreaCheck out;
    const double lambda = alpha.lambda();
    if (lambda == 0.0) return out;
    const auto im_v = [&alpha](double x) { return potential_at(alpha, x).imag(); };
    out.integral = adaptive_simpson(im_v, window.lo, window.hi, {1e-10, 60});
    out.boundary = 2.0 * lambda * (alpha.eval(window.hi).inv_q - alpha.eval(window.lo).inv_q);
    return out;
}

double pt_symmetry_check(const ComplexField& field) {
    if (!is_symmetric_about_zero(field.x)) throw DomainError("pt_symmetry_check: grid not symmetric about 0");
    double worst = 0.0;
    const std::size_t n = field.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(field.values[i] - std::conj(field.values[n - 1 - i])));
    }
    return worst;
}

std::vector<double> SpectrumPrediction::energies() const {
    std::vector<double> out;
    for (const auto& l : levels) out.push_back(l.energy);
    return out;
}

namespace {

int default_count(const PotentialSpec& spec, int count) {
    if (count >= 0) return count;
    if (const auto nb = spec.n_bound()) return *nb;
    return 3;
}

}  // namespace

SpectrumPrediction hermitian_spectrum(const PotentialSpec& spec, int count) {
    SpectrumPrediction p;
    const int n = default_count(spec, count);
    for (int k = 0; k < n; ++k) p.levels.push_back({spec.energy(k), 1, "E" + std::to_string(k)});
    return p;
}

SpectrumPrediction predict_spectrum(const PotentialSpec& spec, double epsilon, int count) {
    SpectrumPrediction p = hermitian_spectrum(spec, count);
    for (auto& l : p.levels) {
        if (std::abs(l.energy - epsilon) <= 1e-9 * std::max(1.0, std::abs(epsilon))) {
            l.multiplicity = 2;
            l.label += "+eps";
            return p;
        }
    }
    const auto pos = std::find_if(p.levels.begin(), p.levels.end(),
                                  [epsilon](const PredictedLevel& l) { return l.energy > epsilon; });
    p.levels.insert(pos, {epsilon, 1, "eps"});
    return p;
}

}  // namespace dlab
