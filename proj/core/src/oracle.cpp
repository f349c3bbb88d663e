#include "darboux_lab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "darboux_lab/error.hpp"
#include "darboux_lab/parallel.hpp"
#include "darboux_lab/quadrature.hpp"

namespace dlab {
namespace {

FdHamiltonian make_fd(std::span<const double> grid) {
    if (grid.size() < kMinFdPoints) throw DomainError("build_fd: need at least 50 grid points");
    FdHamiltonian h;
    h.x.assign(grid.begin(), grid.end());
    h.h = uniform_spacing(grid);
    h.off_diagonal = -1.0 / (h.h * h.h);
    h.diagonal.resize(grid.size());
    return h;
}

void check_same_grid(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DomainError("grid mismatch: different sizes");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::abs(a[i]))) {
            throw DomainError("grid mismatch: abscissas differ");
        }
    }
}

}  // namespace

Tridiagonal FdHamiltonian::tridiagonal() const {
    Tridiagonal t;
    t.diag = diagonal;
    const std::size_t n = size();
    t.lower.assign(n > 0 ? n - 1 : 0, off_diagonal);
    t.upper = t.lower;
    return t;
}

FdHamiltonian build_fd(const ComplexField& potential) {
    if (potential.values.size() != potential.x.size()) throw DomainError("build_fd: malformed field");
    FdHamiltonian h = make_fd(potential.x);
    const double kinetic = 2.0 / (h.h * h.h);
    for (std::size_t i = 0; i < h.size(); ++i) h.diagonal[i] = kinetic + potential.values[i];
    return h;
}

FdHamiltonian build_fd(const PotentialSpec& spec, std::span<const double> grid) {
    FdHamiltonian h = make_fd(grid);
    const double kinetic = 2.0 / (h.h * h.h);
    for (std::size_t i = 0; i < h.size(); ++i) h.diagonal[i] = kinetic + spec.v0(grid[i]);
    return h;
}

std::vector<cplx> eig_complex(const FdHamiltonian& h, EigOptions opts) {
    const Tridiagonal t = h.tridiagonal();
    std::vector<cplx> eig;
    const auto dense = [&] {
        if (t.size() > opts.dense_cap) {
            throw DomainError("eig_complex: matrix dimension exceeds the dense-path cap");
        }
        return eig_complex_dense(t.dense());
    };
    switch (opts.mode) {
        case EigMode::Dense:
            eig = dense();
            break;
        case EigMode::Tridiagonal:
            eig = eig_symmetric_tridiagonal(t);
            break;
        case EigMode::Auto:
            try {
                eig = eig_symmetric_tridiagonal(t);
            } catch (const NumericalError&) {
                eig = dense();
            }
            break;
    }
    if (opts.refine) {
        for (cplx& e : eig) {
            if (std::abs(e.real()) <= opts.refine_below) e = refine_eigenvalue(t, e);
        }
    }
    std::sort(eig.begin(), eig.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return eig;
}

double spectrum_cutoff(const PotentialSpec& spec, const SpectrumPrediction& prediction) {
    if (spec.family() == Family::Morse) return spec.morse().depth() - 0.1;
    const auto& lv = prediction.levels;
    if (lv.empty()) return 0.0;
    const double last = lv.back().energy;
    // Midpoint to the next level of V0 above the prediction.
    int k = 0;
    while (spec.energy(k) <= last + 1e-9) ++k;
    return 0.5 * (last + spec.energy(k));
}

SpectrumReport spectrum_match(const SpectrumPrediction& prediction, std::span<const cplx> computed, double tol_abs,
                              double tol_imag, double cutoff) {
    SpectrumReport rep;
    rep.cutoff = cutoff;
    std::vector<std::size_t> slot_level;
    for (std::size_t i = 0; i < prediction.levels.size(); ++i) {
        for (int m = 0; m < prediction.levels[i].multiplicity; ++m) {
            slot_level.push_back(i);
            rep.predicted.push_back(prediction.levels[i].energy);
        }
    }
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < slot_level.size(); ++s) {
        for (std::size_t j = 0; j < computed.size(); ++j) {
            pairs.emplace_back(std::abs(computed[j] - rep.predicted[s]), s, j);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> slot_match(slot_level.size(), -1);
    std::vector<bool> used(computed.size(), false);
    for (const auto& [dist, s, j] : pairs) {
        if (slot_match[s] >= 0 || used[j]) continue;
        slot_match[s] = static_cast<int>(j);
        used[j] = true;
    }
    rep.pass = !slot_level.empty();
    for (std::size_t s = 0; s < slot_level.size(); ++s) {
        if (slot_match[s] < 0) {
            rep.computed.push_back(cplx(std::nan(""), std::nan("")));
            rep.pass = false;
        } else {
            rep.computed.push_back(computed[static_cast<std::size_t>(slot_match[s])]);
        }
    }
    // Slots of one level are contiguous; a degenerate level is judged by the
    // centroid of its values.
    for (std::size_t first = 0; first < slot_level.size();) {
        std::size_t last = first;
        while (last < slot_level.size() && slot_level[last] == slot_level[first]) ++last;
        cplx centre = 0.0;
        for (std::size_t s = first; s < last; ++s) centre += rep.computed[s];
        centre /= static_cast<double>(last - first);
        for (std::size_t s = first; s < last; ++s) {
            rep.max_split = std::max(rep.max_split, std::abs(rep.computed[s] - centre));
        }
        const double err = std::isfinite(centre.real()) ? std::abs(centre.real() - rep.predicted[first])
                                                         : std::numeric_limits<double>::infinity();
        for (std::size_t s = first; s < last; ++s) rep.abs_errors.push_back(err);
        if (std::isfinite(centre.imag())) {
            rep.max_imag = std::max(rep.max_imag, std::abs(centre.imag()));
            rep.max_rel_imag = std::max(rep.max_rel_imag, std::abs(centre.imag()) / std::max(1.0, std::abs(centre.real())));
        }
        if (!(err <= tol_abs) || !(std::abs(centre.imag()) <= tol_imag)) rep.pass = false;
        first = last;
    }
    for (std::size_t j = 0; j < computed.size(); ++j) {
        if (!used[j] && computed[j].real() < cutoff) rep.spurious.push_back(computed[j]);
    }
    return rep;
}

Window fd_window(const PotentialSpec& spec) { return spec.default_window(); }

SpectrumReport verify_spectrum(const std::function<cplx(double)>& potential, const Window& window,
                               const SpectrumPrediction& prediction, double cutoff, VerifyOptions opts) {
    const auto spectrum = [&](int n) {
        ComplexField v;
        v.x = interior_grid(window, n);
        v.values.resize(v.x.size());
        parallel_for(v.x.size(), [&](std::size_t i) { v.values[i] = potential(v.x[i]); });
        return eig_complex(build_fd(v), opts.eig);
    };
    const std::vector<cplx> coarse = spectrum(opts.n);
    const std::vector<cplx> fine = spectrum(2 * opts.n + 1);

    // Matching is done per grid with a loose tolerance; the Richardson values
    // are then judged against the real criterion.
    const SpectrumReport rc = spectrum_match(prediction, coarse, 1e300, 1e300, cutoff);
    const SpectrumReport rf = spectrum_match(prediction, fine, 1e300, 1e300, cutoff);
    // Degenerate levels may split by O(h) (a Jordan block under perturbation);
    // their centroid is smooth in h^2, so that is what gets extrapolated.
    const auto centroids = [&](const SpectrumReport& r) {
        std::vector<cplx> out = r.computed;
        for (std::size_t first = 0; first < out.size();) {
            std::size_t last = first;
            while (last < out.size() && r.predicted[last] == r.predicted[first]) ++last;
            cplx centre = 0.0;
            for (std::size_t s = first; s < last; ++s) centre += out[s];
            centre /= static_cast<double>(last - first);
            for (std::size_t s = first; s < last; ++s) out[s] = centre;
            first = last;
        }
        return out;
    };
    const std::vector<cplx> cc = centroids(rc);
    const std::vector<cplx> cf = centroids(rf);
    std::vector<cplx> extrapolated;
    for (std::size_t s = 0; s < cf.size(); ++s) extrapolated.push_back((4.0 * cf[s] - cc[s]) / 3.0);
    // Unmatched fine-grid values still count as spurious.
    std::vector<cplx> pool = extrapolated;
    SpectrumReport rep = spectrum_match(prediction, pool, opts.tol_abs, opts.tol_imag, cutoff);
    rep.spurious = rf.spurious;
    rep.max_split = rf.max_split;
    return rep;
}

double schrodinger_residual(const ComplexField& state, cplx energy, const ComplexField& potential) {
    check_same_grid(state.x, potential.x);
    const std::size_t n = state.x.size();
    if (n < kMinResidualPoints) throw DomainError("schrodinger_residual: grid must have at least 800 points");
    const double h = uniform_spacing(state.x);
    const auto& p = state.values;
    double peak = 0.0;
    for (const cplx& v : p) peak = std::max(peak, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const cplx d2 = (-p[i - 2] + 16.0 * p[i - 1] - 30.0 * p[i] + 16.0 * p[i + 1] - p[i + 2]) / (12.0 * h * h);
        worst = std::max(worst, std::abs(-d2 + (potential.values[i] - energy) * p[i]));
    }
    return worst / std::max(1.0, peak * std::max(1.0, std::abs(energy)));
}

double schrodinger_residual(const EigenState& state, const ComplexField& potential) {
    return schrodinger_residual(state.field, state.energy, potential);
}

namespace {

std::vector<double> sign_change_zeros(const ComplexField& f, bool imag_part, double floor) {
    std::vector<double> zeros;
    const auto part = [&](std::size_t i) {
        return imag_part ? f.values[i].imag() : f.values[i].real();
    };
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i) {
        if (std::abs(f.values[i]) <= floor || std::abs(f.values[i + 1]) <= floor) continue;
        const double a = part(i);
        const double b = part(i + 1);
        if (a == 0.0) {
            zeros.push_back(f.x[i]);
        } else if ((a > 0.0) != (b > 0.0) && b != 0.0) {
            zeros.push_back(f.x[i] + (f.x[i + 1] - f.x[i]) * a / (a - b));
        }
    }
    return zeros;
}

}  // namespace

InterlacingResult interlacing_check(const ComplexField& state, double support_threshold) {
    InterlacingResult out;
    double peak = 0.0;
    for (const cplx& v : state.values) peak = std::max(peak, std::abs(v));
    const double floor = support_threshold * peak;
    double imag_peak = 0.0;
    for (const cplx& v : state.values) imag_peak = std::max(imag_peak, std::abs(v.imag()));
    out.real_zeros = sign_change_zeros(state, false, floor);
    if (imag_peak <= 1e-10 * peak) {
        out.vacuous = true;
        out.note = "Im psi vanishes to roundoff";
        return out;
    }
    out.imag_zeros = sign_change_zeros(state, true, floor);
    if (out.real_zeros.size() < 2) {
        out.vacuous = true;
        out.note = "fewer than two zeros of Re psi in the support region";
        return out;
    }
    for (std::size_t k = 0; k + 1 < out.real_zeros.size(); ++k) {
        const double lo = out.real_zeros[k];
        const double hi = out.real_zeros[k + 1];
        const bool found = std::any_of(out.imag_zeros.begin(), out.imag_zeros.end(),
                                       [&](double z) { return z > lo && z < hi; });
        if (!found) {
            out.holds = false;
            out.note = "no zero of Im psi between " + std::to_string(lo) + " and " + std::to_string(hi);
            return out;
        }
    }
    return out;
}

cplx binorm(const ComplexField& state) { return bilinear_overlap(state, state); }

cplx bilinear_overlap(const ComplexField& a, const ComplexField& b) {
    check_same_grid(a.x, b.x);
    const double h = uniform_spacing(a.x);
    std::vector<cplx> prod(a.values.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.values[i] * b.values[i];
    return simpson_samples(prod, h);
}

}  // namespace dlab
