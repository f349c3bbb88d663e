#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace dlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

// Each command writes to cfg.out when set, otherwise to `out`.
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_potential(const RunConfig& cfg, std::ostream& out);
/// CSV per state plus summary.json in the directory cfg.out (default ".");
/// the summary is also written to `out`.
int cmd_states(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Full command line, argv[0] included. Errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g
std::string format_number(double v);

}  // namespace dlab::cli
