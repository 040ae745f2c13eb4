#pragma once

// Subcommand implementations.  Each returns the process exit code:
// 0 success, 1 check failure, 2 usage or config error.

#include "qax/cli/config.hpp"

#include <iosfwd>
#include <json.hpp>

namespace qax::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

/// Runs the invariant suite of every axiom against the configured system.
nlohmann::json run_verify(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, bool as_json, std::ostream& out);

int cmd_chsh_scan(const RunConfig& cfg, std::ostream& out);

struct EvolveSample {
    double t = 0;
    double norm = 0;
    double sigma_x = 0, sigma_y = 0, sigma_z = 0;
    double position = 0;
};

std::vector<EvolveSample> run_evolve(const RunConfig& cfg, long steps, double dt);

/// Angular frequency of the transverse spin precession, from a least-squares
/// fit of the unwrapped phase atan2(<sigma_y>, <sigma_x>) against time.
double fit_precession_frequency(const std::vector<EvolveSample>& series);

/// CSV to `out`; the fitted frequency goes to `diag` as a comment line.
int cmd_evolve(const RunConfig& cfg, long steps, double dt, std::ostream& out, std::ostream& diag);

nlohmann::json run_realist_check(const RunConfig& cfg);
int cmd_realist_check(const RunConfig& cfg, std::ostream& out);

/// Shortest round-trip decimal, independent of locale.
std::string format_number(double v);

}  // namespace qax::cli
