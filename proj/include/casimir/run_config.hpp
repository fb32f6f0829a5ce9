#pragma once

// Run parameters shared by every CLI command. Values come from defaults, then
// an optional `key = value` file, then command-line flags.

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/quad.hpp"

namespace casimir::cli {

/// Thrown for bad keys, malformed values and inconsistent parameters.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;

  double lambda_p = 136.0;
  /// Separations; several values are allowed for `rho`.
  std::vector<double> L;
  std::optional<double> lambda_c;
  std::optional<double> k;
  double a1 = 59.0;
  double a2 = 8.0;
  /// Lateral mismatch; unset means a quarter period (sin(kb) = 1).
  std::optional<double> b;
  double radius = 1e5;

  double rel_tol = 1e-5;
  double abs_tol = 0.0;
  int max_depth = 30;
  int max_subdivisions = 200;

  std::optional<double> k_min;
  std::optional<double> k_max;
  std::optional<double> L_min;
  std::optional<double> L_max;
  std::optional<double> fit_min;
  std::optional<double> fit_max;
  std::optional<int> points;
  bool log_spacing = false;

  std::string out;

  /// Sets one parameter from its textual form. Keys are the long flag names
  /// without dashes (lambda-p, L, lambda-c, k, a1, ...).
  void apply(const std::string& key, const std::string& value);

  /// Reads `key = value` lines; `#` starts a comment.
  void load(std::istream& in, const std::string& source = "config");
  void load_file(const std::string& path);

  /// Checks positivity and lambda_c / k consistency.
  void validate() const;

  /// Corrugation wavenumber from k or lambda_c, or fallback when neither is set.
  double wavenumber(double fallback_lambda_c = 1200.0) const;
  double mismatch(double k) const;
  double separation(double fallback) const;
  quad::QuadratureSpec quadrature() const;
};

/// Keys accepted by RunConfig::apply.
const std::vector<std::string>& config_keys();

}  // namespace casimir::cli
