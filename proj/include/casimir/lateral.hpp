#pragma once

// Lateral Casimir energy and force between sinusoidally corrugated plates
// h1 = a1 cos(k x), h2 = a2 cos(k (x - b)), in the plane-plane geometry and,
// through the proximity approximation for the sphere curvature only, in the
// plane-sphere geometry. Forces are reported in pN.

#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/quad.hpp"
#include "casimir/response.hpp"

namespace casimir::lateral {

struct CorrugationPair {
  double a1 = 0.0;        ///< nm
  double a2 = 0.0;        ///< nm
  double lambda_c = 0.0;  ///< corrugation period, nm
  double k = 0.0;         ///< 2 pi / lambda_c, nm^-1
  double b = 0.0;         ///< lateral mismatch, nm

  static CorrugationPair from_period(double a1, double a2, double lambda_c, double b = 0.0);
  static CorrugationPair from_wavenumber(double a1, double a2, double k, double b = 0.0);
  /// Mismatch giving sin(k b) = 1.
  static double quarter_period_shift(double k) { return 0.5 * std::numbers::pi / k; }

  double cos_kb() const;
  double sin_kb() const;
  void validate() const;
  /// max(a1, a2) / min(L, lambda_c, lambda_P) <= 0.25.
  bool perturbative(double L, const medium::PlasmaMaterial& material) const;
};

struct SphereSetup {
  double R = 0.0;  ///< sphere radius, nm
  double L = 0.0;  ///< distance of closest approach, nm

  void validate() const;
  bool curvature_ok() const { return R >= 20.0 * L; }
  bool corrugation_curvature_ok(double lambda_c) const {
    return R * L >= 20.0 * lambda_c * lambda_c;
  }
};

struct ValidityFlag {
  std::string name;
  bool ok = true;
};

struct ForceResult {
  double value = 0.0;           ///< pN
  double error_estimate = 0.0;  ///< pN
  std::vector<ValidityFlag> regime_flags;
  bool converged = true;
  bool all_flags_ok() const;
};

/// (a1 a2 / 2) cos(k b) G(k), hbar*c*nm^-3.
quad::IntegralResult lateral_energy_pp(const lifshitz::CavityConfig& cavity,
                                       const CorrugationPair& corr,
                                       const quad::QuadratureSpec& spec = {});

/// -d/db of lateral_energy_pp: (a1 a2 / 2) k sin(k b) G(k), hbar*c*nm^-3.
quad::IntegralResult lateral_force_pp(const lifshitz::CavityConfig& cavity,
                                      const CorrugationPair& corr,
                                      const quad::QuadratureSpec& spec = {});

enum class TailMethod {
  /// int_L^inf dL' taken innermost, at every frequency/momentum node.
  PerNode,
  /// Adaptive L' quadrature of G(k, L') up to L + 60/k plus an exponential
  /// tail G(L_end) / k.
  Outer,
};

/// -int_L^inf G(k, L') dL' in hbar*c*nm^-4 (positive). At k = 0 this is e'(L).
quad::IntegralResult separation_integral(double k, const lifshitz::CavityConfig& cavity,
                                         const quad::QuadratureSpec& spec = {},
                                         TailMethod method = TailMethod::PerNode);

/// pi a1 a2 k R sin(k b) int_inf^L G(k, L') dL', pN.
ForceResult lateral_force_ps(const SphereSetup& setup, const CorrugationPair& corr,
                             const medium::PlasmaMaterial& material,
                             const quad::QuadratureSpec& spec = {},
                             TailMethod method = TailMethod::PerNode);

/// The same with G(k) replaced by G(0): pi a1 a2 k R sin(k b) e'(L), pN.
ForceResult pfa_lateral_force_ps(const SphereSetup& setup, const CorrugationPair& corr,
                                 const medium::PlasmaMaterial& material,
                                 const quad::QuadratureSpec& spec = {});

/// PFA force with the perfect-mirror e'(L) = pi^2 / (240 L^4), pN.
double perfect_mirror_pfa_force_ps(const SphereSetup& setup, const CorrugationPair& corr);

struct SweepRow {
  double L = 0.0;
  double exact = 0.0;  ///< F / (a1 a2 sin(kb)), pN nm^-2
  double exact_error = 0.0;
  double pfa = 0.0;
  double pfa_perfect = 0.0;
  double pfa_plasmon = 0.0;
  bool converged = true;
};

/// Normalized plane-sphere force and comparators at each L, in input order.
/// Points run in parallel.
std::vector<SweepRow> force_vs_L_sweep(const medium::PlasmaMaterial& material, double k,
                                       double R, const std::vector<double>& Ls,
                                       const quad::QuadratureSpec& spec = {});

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  ///< RMS of the log residuals
  std::size_t points = 0;
};

/// Least-squares slope of log|y| against log x over points with x in window.
/// Throws std::invalid_argument with fewer than 5 points in the window.
PowerLawFit power_law_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                          std::pair<double, double> window);

struct OptimumResult {
  double k_opt = 0.0;
  double f_max = 0.0;
  bool unimodal = true;
  bool converged = true;
  std::vector<double> scan_k;
  std::vector<double> scan_f;
};

/// Maximises f over [k_lo, k_hi]: log-spaced scan of n_scan points, then
/// golden-section refinement to relative location tolerance rel_tol.
OptimumResult maximise(const std::function<double(double)>& f, double k_lo, double k_hi,
                       int n_scan = 9, double rel_tol = 1e-2);

/// Wavenumber maximising the plane-sphere lateral force at sin(k b) = 1.
/// Default search range spans 0.1/L to 10/L.
OptimumResult optimum_k(const medium::PlasmaMaterial& material, const SphereSetup& setup,
                        double a1, double a2, const quad::QuadratureSpec& spec = {},
                        std::pair<double, double> k_range = {0.0, 0.0});

/// Converts a force in hbar*c*nm^-2 to pN.
double to_piconewton(double force_hbar_c_per_nm2);

}  // namespace casimir::lateral
