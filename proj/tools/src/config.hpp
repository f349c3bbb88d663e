#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "darboux_lab/grid.hpp"
#include "darboux_lab/potentials.hpp"
#include "darboux_lab/seeds.hpp"

namespace dlab::cli {

/// Bad flag, key or value; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

struct RunConfig {
    Family family = Family::Morse;
    double gamma = 1.0;
    double delta = 0.4;
    int nmax = 2;
    double u0 = 1.0;
    double r = 3.0;
    double epsilon = 0.0;
    double lambda = 1.0;
    double J = 1.0;
    double I0 = 1.0;
    std::optional<double> xmin;
    std::optional<double> xmax;
    int npoints = 4001;
    int nstates = 3;
    BackendChoice backend = BackendChoice::Auto;
    int fd_points = 1200;
    std::string out;
};

/// Keys accepted in config files and as --key flags.
const std::map<std::string, std::string>& config_keys();

/// Parses "key = value" lines; '#' starts a comment.
KeyValues parse_key_values(const std::string& text);
KeyValues read_config_file(const std::string& path);

/// Overwrites the fields named in kv.
void apply_values(RunConfig& cfg, const KeyValues& kv);

/// Caption parameter sets for fig3, fig4, ..., fig12.
RunConfig figure_preset(const std::string& id);
/// The subcommand that reproduces a figure's data ("potential" or "states").
std::string figure_command(const std::string& id);

/// Structural checks that need no seed construction.
void validate(const RunConfig& cfg);

PotentialSpec make_spec(const RunConfig& cfg);

/// Sampling window: configured bounds, else the FD window of the family.
Window sample_window(const RunConfig& cfg, const PotentialSpec& spec);

}  // namespace dlab::cli
