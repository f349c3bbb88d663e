#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "darboux_lab/error.hpp"
#include "darboux_lab/oracle.hpp"

namespace dlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a finite number, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const char* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

}  // namespace

const std::map<std::string, std::string>& config_keys() {
    static const std::map<std::string, std::string> keys{
        {"family", "morse, pt or oscillator"},
        {"gamma", "Morse range parameter"},
        {"delta", "Morse fractional part, in (0, 1)"},
        {"nmax", "Morse top level index N"},
        {"u0", "Poschl-Teller scale U0"},
        {"r", "Poschl-Teller strength r > 1"},
        {"epsilon", "factorization energy"},
        {"lambda", "Ermakov parameter; 0 selects the real family"},
        {"bigj", "Ermakov invariant J > 0"},
        {"i0", "Ermakov constant I0"},
        {"xmin", "sampling window start"},
        {"xmax", "sampling window end"},
        {"npoints", "number of sampling abscissas"},
        {"nstates", "number of transformed bound states"},
        {"backend", "auto, analytic or numeric"},
        {"fd-points", "FD grid size for spectra (the finer grid has 2n + 1)"},
        {"out", "output file (directory for states); stdout when empty"},
    };
    return keys;
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!config_keys().contains(key)) {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_key_values(ss.str());
}

void apply_values(RunConfig& cfg, const KeyValues& kv) {
    for (const auto& [key, v] : kv) {
        if (key == "family") {
            if (v == "morse") cfg.family = Family::Morse;
            else if (v == "pt") cfg.family = Family::TrigPoschlTeller;
            else if (v == "oscillator") cfg.family = Family::Oscillator;
            else throw ConfigError("family: unknown family '" + v + "'");
        } else if (key == "gamma") cfg.gamma = to_double(key, v);
        else if (key == "delta") cfg.delta = to_double(key, v);
        else if (key == "nmax") cfg.nmax = to_int(key, v);
        else if (key == "u0") cfg.u0 = to_double(key, v);
        else if (key == "r") cfg.r = to_double(key, v);
        else if (key == "epsilon") cfg.epsilon = to_double(key, v);
        else if (key == "lambda") cfg.lambda = to_double(key, v);
        else if (key == "bigj") cfg.J = to_double(key, v);
        else if (key == "i0") cfg.I0 = to_double(key, v);
        else if (key == "xmin") cfg.xmin = to_double(key, v);
        else if (key == "xmax") cfg.xmax = to_double(key, v);
        else if (key == "npoints") cfg.npoints = to_int(key, v);
        else if (key == "nstates") cfg.nstates = to_int(key, v);
        else if (key == "fd-points") cfg.fd_points = to_int(key, v);
        else if (key == "out") cfg.out = v;
        else if (key == "backend") {
            if (v == "auto") cfg.backend = BackendChoice::Auto;
            else if (v == "analytic") cfg.backend = BackendChoice::Analytic;
            else if (v == "numeric") cfg.backend = BackendChoice::Numeric;
            else throw ConfigError("backend: expected auto, analytic or numeric");
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
}

RunConfig figure_preset(const std::string& id) {
    RunConfig c;
    if (id == "fig3" || id == "fig4") {
        c.nstates = 3;
    } else if (id == "fig7" || id == "fig8") {
        c.family = Family::TrigPoschlTeller;
        c.epsilon = 0.25;
        c.J = M_PI / 4.0;
        c.lambda = std::sqrt(c.J);
        c.I0 = 0.0;
    } else if (id == "fig9" || id == "fig10") {
        c.family = Family::TrigPoschlTeller;
        c.epsilon = 8.075;
        c.J = 1.34;
        c.lambda = std::sqrt(c.J);
        c.I0 = -2.13;
    } else if (id == "fig11") {
        c.family = Family::TrigPoschlTeller;
        c.epsilon = 5.26;
        c.lambda = 0.0;
        c.J = 2.74;
        c.I0 = 3.701;
    } else if (id == "fig12") {
        c.epsilon = 4.55;
    } else {
        throw ConfigError("unknown figure '" + id + "'");
    }
    return c;
}

std::string figure_command(const std::string& id) {
    if (id == "fig4" || id == "fig8" || id == "fig10") return "states";
    figure_preset(id);
    return "potential";
}

void validate(const RunConfig& cfg) {
    if (!(cfg.J > 0.0)) throw ConfigError("bigj: J must be positive");
    if (cfg.npoints < 2) throw ConfigError("npoints: need at least 2");
    if (cfg.nstates < 0) throw ConfigError("nstates: must be nonnegative");
    if (cfg.fd_points < static_cast<int>(kMinFdPoints)) {
        throw ConfigError("fd-points: need at least " + std::to_string(kMinFdPoints));
    }
    if (cfg.xmin.has_value() != cfg.xmax.has_value()) throw ConfigError("xmin and xmax must be given together");
    if (cfg.xmin && !(*cfg.xmax > *cfg.xmin)) throw ConfigError("xmax must exceed xmin");
    if (cfg.family == Family::Morse && cfg.nstates > cfg.nmax + 1) {
        throw ConfigError("nstates: Morse well has only N + 1 bound states");
    }
}

PotentialSpec make_spec(const RunConfig& cfg) {
    try {
        switch (cfg.family) {
            case Family::Morse:
                return make_morse(cfg.gamma, cfg.delta, cfg.nmax);
            case Family::TrigPoschlTeller:
                return make_pt(cfg.u0, cfg.r);
            case Family::Oscillator:
                return make_oscillator();
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown family");
}

Window sample_window(const RunConfig& cfg, const PotentialSpec& spec) {
    if (!cfg.xmin) return fd_window(spec);
    const Window w{*cfg.xmin, *cfg.xmax};
    const Window d = spec.domain();
    if (w.lo < d.lo || w.hi > d.hi) throw ConfigError("window lies outside the domain of V0");
    return w;
}

}  // namespace dlab::cli
