#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "darboux_lab/darboux.hpp"
#include "darboux_lab/error.hpp"
#include "darboux_lab/oracle.hpp"
#include "darboux_lab/parallel.hpp"

namespace dlab::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kCheckPoints = 2001;
constexpr int kStatePoints = 8001;
constexpr int kMaxStatePoints = 32001;
// Degenerate (embedded) levels split by O(h) on the FD grid.
constexpr int kDegenerateFdPoints = 2400;

constexpr double kTolIdentity = 1e-12;
constexpr double kTolWronskian = 1e-8;
constexpr double kTolErmakov = 1e-7;
constexpr double kTolRiccati = 1e-7;
constexpr double kTolInvariant = 1e-8;
constexpr double kTolArea = 1e-6;
constexpr double kTolPt = 1e-10;
constexpr double kTolResidual = 1e-5;
constexpr double kTolOverlap = 1e-6;
constexpr double kTolImag = 1e-6;

struct Construction {
    PotentialSpec spec;
    SeedPair pair;
    AlphaFunction alpha;
    Window window;
    // lambda = 0: alpha is proportional to |v/omega0 + sign gamma_m u_p|.
    bool real_family;
    double gamma_m;
    int sign;
};

Construction construct(const RunConfig& cfg) {
    validate(cfg);
    const PotentialSpec spec = make_spec(cfg);
    const Window window = sample_window(cfg, spec);
    try {
        SeedPair pair = make_seed_pair(spec, cfg.epsilon, seed_window(spec), cfg.backend);
        const Window pw = pair.window();
        if (cfg.xmin && (window.lo < pw.lo || window.hi > pw.hi)) {
            throw ConfigError(fmt::format("window must lie inside [{}, {}] for this seed pair", pw.lo, pw.hi));
        }
        AlphaFunction alpha = make_alpha(pair, cfg.lambda, cfg.J, cfg.I0);
        const double ratio = cfg.I0 / cfg.J;
        return {spec, pair, alpha, window, cfg.lambda == 0.0, std::abs(ratio), ratio < 0.0 ? -1 : +1};
    } catch (const BackendError& e) {
        throw ConfigError(std::string("backend: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

std::string config_summary(const RunConfig& cfg) {
    std::string s = to_string(cfg.family);
    if (cfg.family == Family::Morse) s += fmt::format(" gamma={} delta={} N={}", cfg.gamma, cfg.delta, cfg.nmax);
    if (cfg.family == Family::TrigPoschlTeller) s += fmt::format(" U0={} r={}", cfg.u0, cfg.r);
    return s + fmt::format(" eps={} lambda={} J={} I0={}", cfg.epsilon, cfg.lambda, cfg.J, cfg.I0);
}

json config_json(const RunConfig& cfg, const Construction& c) {
    json j;
    j["family"] = to_string(cfg.family);
    if (cfg.family == Family::Morse) {
        j["gamma"] = cfg.gamma;
        j["delta"] = cfg.delta;
        j["nmax"] = cfg.nmax;
    } else if (cfg.family == Family::TrigPoschlTeller) {
        j["u0"] = cfg.u0;
        j["r"] = cfg.r;
    }
    j["epsilon"] = cfg.epsilon;
    j["lambda"] = cfg.lambda;
    j["bigj"] = cfg.J;
    j["i0"] = cfg.I0;
    j["omega0"] = c.pair.omega0();
    j["backend"] = to_string(c.pair.backend());
    j["window"] = {c.window.lo, c.window.hi};
    if (c.real_family) {
        j["gamma_m"] = c.gamma_m;
        j["sign"] = c.sign;
    }
    return j;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json spectrum_json(const SpectrumReport& r) {
    json j;
    j["predicted"] = r.predicted;
    json computed = json::array();
    for (const cplx& z : r.computed) computed.push_back(complex_json(z));
    j["computed"] = computed;
    j["abs_errors"] = r.abs_errors;
    j["max_imag"] = r.max_imag;
    j["max_split"] = r.max_split;
    json spurious = json::array();
    for (const cplx& z : r.spurious) spurious.push_back(complex_json(z));
    j["spurious"] = spurious;
    j["cutoff"] = r.cutoff;
    j["pass"] = r.pass;
    return j;
}

void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
    if (cfg.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << text;
}

double spectrum_tolerance(const PotentialSpec& spec) {
    return spec.family() == Family::TrigPoschlTeller ? 2e-2 : 1e-2;
}

std::vector<double> singularities(const Construction& c, std::span<const double> grid) {
    if (!c.real_family) return {};
    return real_family_zeros(c.pair, c.gamma_m, c.sign, grid);
}

/// nullopt with the singularity list filled when the lambda = 0 member is singular.
std::optional<SpectrumReport> spectrum_of(const RunConfig& cfg, const Construction& c, std::vector<double>& sing,
                                          int& fd_points) {
    sing = singularities(c, interior_grid(c.window, kStatePoints));
    if (!sing.empty()) return std::nullopt;
    const SpectrumPrediction pred = predict_spectrum(c.spec, cfg.epsilon);
    VerifyOptions opts;
    opts.n = cfg.fd_points;
    const bool degenerate = std::any_of(pred.levels.begin(), pred.levels.end(),
                                        [](const PredictedLevel& l) { return l.multiplicity > 1; });
    if (degenerate) opts.n = std::max(opts.n, kDegenerateFdPoints);
    fd_points = opts.n;
    opts.tol_abs = spectrum_tolerance(c.spec);
    opts.tol_imag = kTolImag;
    const AlphaFunction& alpha = c.alpha;
    return verify_spectrum([&alpha](double x) { return potential_at(alpha, x); }, c.window, pred,
                           spectrum_cutoff(c.spec, pred), opts);
}

struct StateResult {
    EigenState state;
    std::optional<double> residual;
    InterlacingResult interlacing;
};

std::vector<StateResult> compute_states(const RunConfig& cfg, const Construction& c, std::span<const double> grid) {
    const int count = cfg.nstates + (c.real_family ? 0 : 1);
    std::vector<StateResult> out(static_cast<std::size_t>(count));
    const ComplexField v = complex_potential(c.alpha, grid);
    parallel_for(out.size(), [&](std::size_t i) {
        StateResult& r = out[i];
        r.state = static_cast<int>(i) < cfg.nstates ? transform_bound_state(c.alpha, c.spec, static_cast<int>(i), grid)
                                                    : missing_state(c.alpha, grid);
        if (grid.size() >= kMinResidualPoints) r.residual = schrodinger_residual(r.state, v);
        r.interlacing = interlacing_check(r.state.field);
    });
    return out;
}

json state_json(const StateResult& r) {
    json j;
    j["label"] = r.state.label();
    j["energy"] = r.state.energy;
    j["raw_binorm"] = complex_json(r.state.raw_binorm);
    j["raw_binorm_abs"] = std::abs(r.state.raw_binorm);
    j["zero_binorm"] = r.state.zero_binorm;
    j["binorm"] = complex_json(binorm(r.state.field));
    j["residual"] = r.residual ? json(*r.residual) : json(nullptr);
    j["interlacing"] = {{"holds", r.interlacing.holds},
                        {"vacuous", r.interlacing.vacuous},
                        {"real_zeros", r.interlacing.real_zeros},
                        {"imag_zeros", r.interlacing.imag_zeros},
                        {"note", r.interlacing.note}};
    return j;
}

struct Suite {
    json checks = json::array();
    bool pass = true;

    void add(const std::string& name, double value, double tolerance) {
        const bool ok = std::isfinite(value) && value <= tolerance;
        checks.push_back({{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", ok}});
        pass = pass && ok;
    }
    void add_flag(const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({{"name", name}, {"detail", detail}, {"pass", ok}});
        pass = pass && ok;
    }
};

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const Construction c = construct(cfg);
    std::vector<double> sing;
    int fd_points = 0;
    const auto report = spectrum_of(cfg, c, sing, fd_points);
    json j;
    j["config"] = config_json(cfg, c);
    j["singularities"] = sing;
    j["fd_points"] = fd_points;
    j["spectrum"] = report ? spectrum_json(*report) : json(nullptr);
    const bool pass = report && report->pass;
    j["pass"] = pass;
    emit(cfg, out, j.dump(2) + "\n");
    return pass ? kExitPass : kExitFail;
}

int cmd_potential(const RunConfig& cfg, std::ostream& out) {
    const Construction c = construct(cfg);
    const auto grid = interior_grid(c.window, cfg.npoints);
    std::vector<cplx> values(grid.size());
    if (c.real_family) {
        const RealFamily fam = real_family_lambda0(c.pair, c.gamma_m, c.sign, grid);
        std::copy(fam.potential.values.begin(), fam.potential.values.end(), values.begin());
    } else {
        values = complex_potential(c.alpha, grid).values;
    }
    std::string csv = "x,re_v,im_v,v0\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv += fmt::format("{},{},{},{}\n", format_number(grid[i]), format_number(values[i].real()),
                           format_number(values[i].imag()), format_number(c.spec.v0(grid[i])));
    }
    emit(cfg, out, csv);
    return kExitPass;
}

int cmd_states(const RunConfig& cfg, std::ostream& out) {
    const Construction c = construct(cfg);
    const auto grid = interior_grid(c.window, cfg.npoints);
    const auto sing = singularities(c, grid);
    json j;
    j["config"] = config_json(cfg, c);
    j["singularities"] = sing;
    if (!sing.empty()) {
        j["states"] = json::array();
        j["pass"] = false;
        out << j.dump(2) << "\n";
        return kExitFail;
    }
    const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create directory " + dir.string());
    const auto states = compute_states(cfg, c, grid);
    json list = json::array();
    for (const StateResult& r : states) {
        const std::string name = r.state.label() + ".csv";
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + (dir / name).string());
        f << "x,re_psi,im_psi\n";
        const auto& fld = r.state.field;
        for (std::size_t i = 0; i < fld.x.size(); ++i) {
            f << format_number(fld.x[i]) << ',' << format_number(fld.values[i].real()) << ','
              << format_number(fld.values[i].imag()) << '\n';
        }
        json s = state_json(r);
        s["file"] = name;
        list.push_back(s);
    }
    j["states"] = list;
    if (c.real_family) j["missing_state"] = "omitted for lambda = 0";
    j["pass"] = true;
    const std::string text = j.dump(2) + "\n";
    std::ofstream(dir / "summary.json", std::ios::binary) << text;
    out << text;
    return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Construction c = construct(cfg);
    const auto grid = interior_grid(c.window, kCheckPoints);
    Suite suite;
    json j;
    j["config"] = config_json(cfg, c);

    std::vector<double> sing;
    int fd_points = 0;
    const auto report = spectrum_of(cfg, c, sing, fd_points);
    j["singularities"] = sing;
    j["fd_points"] = fd_points;
    if (c.real_family) {
        suite.add_flag("singularity_free", sing.empty(), fmt::format("{} zeros of alpha", sing.size()));
    } else {
        const QMinimum q = min_q(c.alpha, interior_grid(c.window, kStatePoints));
        suite.add_flag("q_positive", q.value > 0.0, fmt::format("min Q = {:.6g} at x = {:.6g}", q.value, q.location));
    }
    suite.add("coefficient_identity", coefficient_identity_residual(c.alpha.coeffs()), kTolIdentity);
    suite.add("wronskian", wronskian_deviation(c.pair, grid), kTolWronskian);
    if (sing.empty()) {
        suite.add("ermakov", ermakov_residual(c.alpha, grid), kTolErmakov);
        suite.add("riccati", riccati_residual(c.alpha, grid), kTolRiccati);
        suite.add("invariant_j", invariant_j_scan(c.alpha, grid), kTolInvariant);
        const Window pw = c.pair.window();
        const Window area{std::max(c.window.lo, pw.lo), std::min(c.window.hi, pw.hi)};
        suite.add("zero_total_area", std::abs(zero_total_area(c.alpha, area).integral), kTolArea);
        if (c.spec.is_even() && cfg.I0 == 0.0 && is_symmetric_about_zero(grid)) {
            suite.add("pt_symmetry", pt_symmetry_check(complex_potential(c.alpha, grid)), kTolPt);
        }
    }
    j["spectrum"] = report ? spectrum_json(*report) : json(nullptr);
    suite.add_flag("spectrum", report && report->pass, report ? "FD oracle with Richardson step" : "skipped");

    json states = json::array();
    if (sing.empty()) {
        // The residual is a five-point FD estimate; refine until it resolves the states.
        int points = kStatePoints;
        std::vector<StateResult> results;
        for (;; points = 2 * points - 1) {
            results = compute_states(cfg, c, interior_grid(c.window, points));
            const bool resolved = std::all_of(results.begin(), results.end(),
                                              [](const StateResult& r) { return *r.residual <= kTolResidual; });
            if (resolved || points >= kMaxStatePoints) break;
        }
        j["state_points"] = points;
        for (const StateResult& r : results) {
            states.push_back(state_json(r));
            suite.add("residual_" + r.state.label(), *r.residual, kTolResidual);
            suite.add_flag("interlacing_" + r.state.label(), r.interlacing.holds,
                           r.interlacing.vacuous ? r.interlacing.note : "checked");
        }
        const std::size_t k = std::min<std::size_t>(3, static_cast<std::size_t>(cfg.nstates));
        double overlap = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            for (std::size_t n = m + 1; n < k; ++n) {
                overlap = std::max(overlap, std::abs(bilinear_overlap(results[m].state.field, results[n].state.field)));
            }
        }
        if (k > 1) suite.add("biorthogonality", overlap, kTolOverlap);
    }
    j["states"] = states;
    j["checks"] = suite.checks;
    j["pass"] = suite.pass;
    emit(cfg, out, j.dump(2) + "\n");
    return suite.pass ? kExitPass : kExitFail;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Complex Darboux partners of solvable potentials, with a finite-difference oracle"};
    app.require_subcommand(1);
    app.fallthrough();

    KeyValues flags;
    std::string config_file;
    std::map<std::string, std::string> raw;
    for (const auto& [key, help] : config_keys()) app.add_option("--" + key, raw[key], help);
    app.add_option("--config", config_file, "key = value file; flags take precedence");

    std::string figure_id;
    auto* spectrum = app.add_subcommand("spectrum", "FD spectrum against the predicted levels (JSON)");
    auto* potential = app.add_subcommand("potential", "x, re_v, im_v, v0 as CSV");
    auto* states = app.add_subcommand("states", "eigenfunction CSVs and a JSON summary");
    auto* verify = app.add_subcommand("verify", "full invariant suite (JSON)");
    auto* figure = app.add_subcommand("figure", "data behind a figure, from its caption parameters");
    figure->add_option("id", figure_id, "fig3, fig4, fig7, fig8, fig9, fig10, fig11 or fig12")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        RunConfig cfg = figure->parsed() ? figure_preset(figure_id) : RunConfig{};
        if (!config_file.empty()) apply_values(cfg, read_config_file(config_file));
        for (const auto& [key, help] : config_keys()) {
            if (app.count("--" + key) > 0) flags[key] = raw[key];
        }
        apply_values(cfg, flags);
        std::string command;
        if (figure->parsed()) command = figure_command(figure_id);
        else if (spectrum->parsed()) command = "spectrum";
        else if (potential->parsed()) command = "potential";
        else if (states->parsed()) command = "states";
        else if (verify->parsed()) command = "verify";
        if (command == "spectrum") return cmd_spectrum(cfg, out);
        if (command == "potential") return cmd_potential(cfg, out);
        if (command == "states") return cmd_states(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SingularityError& e) {
        err << "singular: " << e.what() << " at x = " << e.location() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace dlab::cli
