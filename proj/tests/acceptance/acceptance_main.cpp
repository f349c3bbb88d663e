// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "charpoly_oracle.hpp"
#include "darboux_lab/darboux_lab.hpp"
#include "generators.hpp"

using namespace dlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Case {
    std::string name;
    PotentialSpec spec;
    double eps, lambda, J, I0;
};

const PotentialSpec kMorse2 = make_morse(1.0, 0.4, 2);
const PotentialSpec kMorse4 = make_morse(1.0, 0.4, 4);
const PotentialSpec kPt3 = make_pt(1.0, 3.0);

const Case kCase1{"morse N=2", kMorse2, 0.0, 1.0, 1.0, 1.0};
const Case kCase2{"morse N=4", kMorse4, 0.0, 1.0, 1.0, 1.0};
const Case kCase3{"pt symmetric", kPt3, 0.25, std::sqrt(M_PI / 4.0), M_PI / 4.0, 0.0};
const Case kCase4{"pt asymmetric", kPt3, 8.075, std::sqrt(1.34), 1.34, -2.13};

AlphaFunction alpha_of(const Case& c) {
    return make_alpha(make_seed_pair(c.spec, c.eps, seed_window(c.spec)), c.lambda, c.J, c.I0);
}

// Levels are pinned here rather than taken from predict_spectrum, so a wrong
// closed form cannot pass by agreeing with itself.
Outcome spectrum_criterion(const Case& c, const std::vector<double>& expected, double tol_abs, double tol_imag) {
    Outcome o;
    const SpectrumPrediction pred = predict_spectrum(c.spec, c.eps);
    const std::vector<double> got = pred.energies();
    if (got.size() != expected.size()) {
        return {false, fmt::format("predicted {} levels, expected {}", got.size(), expected.size())};
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (std::abs(got[i] - expected[i]) > 1e-12) {
            return {false, fmt::format("closed form gives {} for level {}, expected {}", got[i], i, expected[i])};
        }
    }
    const AlphaFunction a = alpha_of(c);
    VerifyOptions opts;
    opts.n = 1200;
    opts.tol_abs = tol_abs;
    opts.tol_imag = tol_imag;
    const SpectrumReport rep = verify_spectrum([&a](double x) { return potential_at(a, x); }, fd_window(c.spec), pred,
                                               spectrum_cutoff(c.spec, pred), opts);
    const double err = *std::max_element(rep.abs_errors.begin(), rep.abs_errors.end());
    o.pass = rep.pass;
    o.detail = fmt::format("max|dE| = {:.2e} (tol {:.0e}), max|Im E| = {:.2e} (tol {:.0e}), {} spurious below {:.4g}",
                           err, tol_abs, rep.max_imag, tol_imag, rep.spurious.size(), rep.cutoff);
    return o;
}

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = spectrum_criterion(kCase1, {0.0, 2.65, 6.45, 8.25}, 1e-2, 1e-6);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.pass = o.pass && secs <= 120.0;
    o.detail += fmt::format(", {:.2f} s (limit 120 s)", secs);
    return o;
}

Outcome criterion2() { return spectrum_criterion(kCase2, {0.0, 4.65, 12.45, 18.25, 22.05, 23.85}, 1e-2, 1e-6); }

Outcome criterion3() {
    Outcome o = spectrum_criterion(kCase3, {0.25, 9.0, 16.0, 25.0}, 2e-2, 1e-6);
    const ComplexField v = complex_potential(alpha_of(kCase3), interior_grid(fd_window(kPt3), 1201));
    const double asym = pt_symmetry_check(v);
    o.pass = o.pass && asym <= 1e-10;
    o.detail += fmt::format(", max|V(x) - conj V(-x)| = {:.2e} (tol 1e-10)", asym);
    return o;
}

Outcome criterion4() { return spectrum_criterion(kCase4, {8.075, 9.0, 16.0, 25.0}, 2e-2, 1e-6); }

Outcome criterion5() {
    Outcome o;
    std::vector<std::string> parts;
    const auto grid = interior_grid(seed_window(kMorse2), 20001);
    for (double eps : {4.55, 6.45}) {
        const SeedPair pair = make_seed_pair(kMorse2, eps, seed_window(kMorse2));
        const QMinimum q = min_q(make_alpha(pair, 1.0, 1.0, 1.0), grid);
        // J = I0 = 1 at lambda = 0 is the member with gamma_M = 1, sign +.
        const auto zeros = real_family_zeros(pair, 1.0, +1, grid);
        o.pass = o.pass && q.value > 0.0 && zeros.size() == 2;
        parts.push_back(fmt::format("eps={}: min Q = {:.3g}, lambda=0 zeros = {}", eps, q.value, zeros.size()));
    }
    o.detail = fmt::format("{}; {}", parts[0], parts[1]);
    return o;
}

Outcome criterion6() {
    Outcome o;
    const double eps = 5.26;
    const SeedPair pair = make_seed_pair(kPt3, eps, seed_window(kPt3));
    const SpectrumPrediction pred = predict_spectrum(kPt3, eps);
    const auto grid = interior_grid(fd_window(kPt3), 20001);
    for (double gm : {1.35, 0.7402}) {
        const auto zeros = real_family_zeros(pair, gm, +1, grid);
        // Q = J (v/omega0 + (I0/J) u_p)^2 at lambda = 0, so I0/J = gamma_M.
        const AlphaFunction a = make_alpha(pair, 0.0, 1.0, gm);
        double max_im = 0.0;
        for (std::size_t i = 0; i < grid.size(); i += 97) max_im = std::max(max_im, std::abs(potential_at(a, grid[i]).imag()));
        VerifyOptions opts;
        opts.tol_abs = 2e-2;
        opts.tol_imag = 1e-6;
        const SpectrumReport rep = verify_spectrum([&a](double x) { return potential_at(a, x); }, fd_window(kPt3),
                                                   pred, spectrum_cutoff(kPt3, pred), opts);
        const double err = *std::max_element(rep.abs_errors.begin(), rep.abs_errors.end());
        o.pass = o.pass && zeros.empty() && max_im == 0.0 && rep.pass;
        o.detail += fmt::format("{}gamma_M={}: {} zeros, max|dE| = {:.2e}", o.detail.empty() ? "" : "; ", gm,
                                zeros.size(), err);
    }
    o.detail += " (tol 2e-2)";
    return o;
}

Outcome criterion7() {
    double ident = 0, wr = 0, erm = 0, ric = 0, inv = 0, area = 0;
    for (const Case& c : {kCase1, kCase2, kCase3, kCase4}) {
        const AlphaFunction a = alpha_of(c);
        const auto grid = interior_grid(a.window(), 2001);
        ident = std::max(ident, coefficient_identity_residual(a.coeffs()));
        wr = std::max(wr, wronskian_deviation(a.pair(), grid));
        erm = std::max(erm, ermakov_residual(a, grid));
        ric = std::max(ric, riccati_residual(a, grid));
        inv = std::max(inv, invariant_j_scan(a, grid));
        area = std::max(area, std::abs(zero_total_area(a, a.window()).integral));
    }
    Outcome o;
    o.pass = ident <= 1e-12 && wr <= 1e-8 && erm <= 1e-7 && ric <= 1e-7 && inv <= 1e-8 && area <= 1e-6;
    o.detail = fmt::format(
        "4ac-b^2 {:.1e}/1e-12, Wronskian {:.1e}/1e-8, Ermakov {:.1e}/1e-7, Riccati {:.1e}/1e-7, "
        "J scan {:.1e}/1e-8, |area| {:.1e}/1e-6",
        ident, wr, erm, ric, inv, area);
    return o;
}

Outcome criterion8() {
    Outcome o;
    double worst_res = 0.0, worst_overlap = 0.0;
    std::string interlacing;
    for (const Case& c : {kCase1, kCase2, kCase3, kCase4}) {
        const AlphaFunction a = alpha_of(c);
        const auto grid = interior_grid(fd_window(c.spec), 8001);
        const ComplexField v = complex_potential(a, grid);
        const int count = c.spec.n_bound().value_or(3);
        std::vector<EigenState> states{missing_state(a, grid)};
        for (int n = 0; n < count; ++n) states.push_back(transform_bound_state(a, c.spec, n, grid));
        for (const EigenState& s : states) worst_res = std::max(worst_res, schrodinger_residual(s, v));
        for (std::size_t m = 0; m < 3; ++m) {
            for (std::size_t n = m + 1; n < 3; ++n) {
                worst_overlap = std::max(worst_overlap, std::abs(bilinear_overlap(states[m].field, states[n].field)));
            }
        }
        if (c.name == kCase1.name || c.name == kCase3.name) {
            for (std::size_t k : {1u, 2u}) {
                const InterlacingResult r = interlacing_check(states[k].field);
                o.pass = o.pass && r.holds;
                interlacing += fmt::format("{}{} {}:{}", interlacing.empty() ? "" : ", ", c.name, states[k].label(),
                                           r.holds ? (r.vacuous ? "vacuous" : "ok") : "violated");
            }
        }
    }
    o.pass = o.pass && worst_res <= 1e-5 && worst_overlap <= 1e-6;
    o.detail = fmt::format("max residual {:.2e}/1e-5, max |<psi_m psi_n>| {:.2e}/1e-6, interlacing [{}]", worst_res,
                           worst_overlap, interlacing);
    return o;
}

Outcome criterion9() {
    gen::Source src(20240917);
    double worst_dense = 0.0, worst_ql = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(src.integer(2, 50));
        Tridiagonal t;
        t.diag = src.complex_vector(n, 2.0);
        t.lower = src.complex_vector(n - 1, 1.0);
        t.upper = trial % 2 == 0 ? t.lower : src.complex_vector(n - 1, 1.0);
        const auto roots = oracle::tridiagonal_roots(t.diag, t.lower, t.upper);
        const auto distance = [&](std::vector<cplx> eig) {
            double worst = 0.0;
            for (const cplx& r : roots) {
                auto it = std::min_element(eig.begin(), eig.end(),
                                           [&](cplx a, cplx b) { return std::abs(a - r) < std::abs(b - r); });
                worst = std::max(worst, std::abs(*it - r));
                eig.erase(it);
            }
            return worst;
        };
        worst_dense = std::max(worst_dense, distance(eig_complex_dense(t.dense())));
        if (trial % 2 == 0) worst_ql = std::max(worst_ql, distance(eig_symmetric_tridiagonal(t)));
    }
    ComplexField box;
    box.x = interior_grid({0.0, M_PI}, 2000);
    box.values.assign(box.x.size(), 0.0);
    const auto e = eig_complex(build_fd(box));
    double box_err = 0.0;
    for (int k = 0; k < 3; ++k) box_err = std::max(box_err, std::abs(e[k] - cplx((k + 1.0) * (k + 1.0))));
    Outcome o;
    o.pass = worst_dense <= 1e-8 && worst_ql <= 1e-8 && box_err <= 1e-2;
    o.detail = fmt::format("dense vs charpoly {:.1e}, QL vs charpoly {:.1e} (tol 1e-8), box {{1,4,9}} {:.1e} (tol 1e-2)",
                           worst_dense, worst_ql, box_err);
    return o;
}

}  // namespace

int main() {
    configure_threads_from_env();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Morse N=2 complex partner spectrum", criterion1},
        {"Morse N=4 complex partner spectrum", criterion2},
        {"PT-symmetric Poschl-Teller partner", criterion3},
        {"non-PT Poschl-Teller partner, near-degenerate pair", criterion4},
        {"embedded factorization energies", criterion5},
        {"lambda=0 real family", criterion6},
        {"identity suite", criterion7},
        {"eigenfunction suite", criterion8},
        {"oracle integrity", criterion9},
    };
    bool all = true;
    int id = 0;
    for (const auto& [name, run] : criteria) {
        ++id;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        fmt::print("{} [{}] {}: {}\n", o.pass ? "PASS" : "FAIL", id, name, o.detail);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
