#pragma once

// CLI commands. Each writes CSV (or a text summary) to `out` and returns true
// when every quadrature it ran converged.

#include <ostream>
#include <string>
#include <vector>

#include "casimir/run_config.hpp"

namespace casimir::cli {

/// rho(k) = G(k)/G(0). Columns k_nm_inv, rho, rho_error, with a leading L_nm
/// column when several separations are given.
bool cmd_rho(const RunConfig& cfg, std::ostream& out);

/// Plane-sphere lateral force against k. Columns k_nm_inv, F_exact_pN,
/// F_pfa_pN, error_pN, peak.
bool cmd_force_vs_k(const RunConfig& cfg, std::ostream& out);

/// Plane-sphere force normalized by a1 a2 sin(kb) against L, with the three
/// comparators and a power-law fit over the fit window in the footer.
/// Separations are log-spaced between L-min and L-max unless listed with --L.
bool cmd_force_vs_L(const RunConfig& cfg, std::ostream& out);

/// e, e', e'' with error estimates, finite-difference checks and ratios to
/// the perfect-mirror values.
bool cmd_plane_plane(const RunConfig& cfg, std::ostream& out);

const std::vector<std::string>& command_names();

/// Runs cfg.command. Throws UsageError for an unknown command.
bool run(const RunConfig& cfg, std::ostream& out);

/// Evenly spaced values on [lo, hi], logarithmic when log_spacing is set.
std::vector<double> spaced(double lo, double hi, int n, bool log_spacing);

/// printf("%.9g").
std::string fmt(double v);

}  // namespace casimir::cli
