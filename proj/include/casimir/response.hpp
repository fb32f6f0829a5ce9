#pragma once

// Second-order response function G(k) of a cavity with corrugated plates:
// the energy shift is dE/A = int d^2k/(2pi)^2 G(k) H1(k) H2(-k), with
//
//   G(k) = -(1/2pi) int_0^inf d(xi/c) int d^2k'/(2pi)^2 b_{k', k'-k}(xi)
//
// in units of hbar*c*nm^-5. The kernel b pairs one first-order non-specular
// reflection on each plate with the multiple-reflection denominators of the
// flat cavity.

#include <utility>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/nonspec.hpp"
#include "casimir/quad.hpp"

namespace casimir::response {

struct ResponseQuery {
  double k = 0.0;  ///< corrugation wavenumber |k|, nm^-1
  lifshitz::CavityConfig cavity;
  quad::QuadratureSpec quad;
  /// Direction of the corrugation wavevector in radians. Zero uses the
  /// reflection symmetry of the kernel and integrates theta over [0, pi];
  /// any other value integrates the full circle.
  double direction = 0.0;
};

/// Polarization-resolved pieces of b at one (k_out, k_in, xi) node:
/// b(L) = e^{-(kappa_o + kappa_i) L} sum_{p',p} numer[p'][p] /
///        ((1 - spec_o[p']^2 e^{-2 kappa_o L}) (1 - spec_i[p]^2 e^{-2 kappa_i L})).
struct KernelTerms {
  double numer[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double spec2_out[2] = {0.0, 0.0};
  double spec2_in[2] = {0.0, 0.0};
  double kappa_out = 0.0;
  double kappa_in = 0.0;

  double at(double L) const;
  /// int_L^inf b(L') dL', adaptive in L'.
  quad::IntegralResult integrated_from(double L, const quad::QuadratureSpec& spec) const;
};

KernelTerms kernel_terms(const nonspec::SurfaceMode& out, const nonspec::SurfaceMode& in,
                         double xi_over_c, double plasma_wavenumber_sq);

/// b_{k_out, k_in}(xi) at separation cavity.L, in nm^-2. Built from the
/// amplitude matrices; the integrals use the equivalent KernelTerms path.
double kernel_b(const lifshitz::CavityConfig& cavity, nonspec::Vec2 k_out, nonspec::Vec2 k_in,
                double xi_over_c);

/// G(k) in hbar*c*nm^-5. Negative for every k.
quad::IntegralResult response_G(const ResponseQuery& query);

/// int_L^inf G(k, L') dL' in hbar*c*nm^-4, with the L' integral carried out
/// innermost at every (xi, k', theta) node.
quad::IntegralResult response_G_integrated(const ResponseQuery& query);

/// rho(k) = G(k) / G(0); G(0) comes from a dedicated evaluation at k = 0.
/// The error is propagated from both evaluations.
quad::IntegralResult rho(const ResponseQuery& query);

/// rho(k) from a G(0) computed once by the caller.
quad::IntegralResult rho(const ResponseQuery& query, const quad::IntegralResult& g_zero);

/// Large-k fit G(k) ~ alpha k e^{-kL}.
struct AsymptoteFit {
  double alpha = 0.0;  ///< hbar*c*nm^-4
  std::pair<double, double> fit_window{0.0, 0.0};
  double residual = 0.0;   ///< relative RMS of G against the fitted form
  double spread = 0.0;     ///< (max - min) / mean of G / (k e^{-kL}) over the samples
  double log_slope = 0.0;  ///< least-squares slope of ln|G/k| against k, nm
  std::vector<double> ks;
  std::vector<double> values;
};

/// Fit on precomputed samples; G values may be synthetic.
AsymptoteFit fit_asymptote_samples(double L, const std::vector<double>& ks,
                                   const std::vector<double>& values);

/// Computes G on n_points log-spaced k in the window and fits. Throws
/// std::invalid_argument unless k L >= 5 and k lambda_P >= 5 on the window.
AsymptoteFit fit_asymptote(const lifshitz::CavityConfig& cavity,
                           std::pair<double, double> k_window, const quad::QuadratureSpec& spec,
                           int n_points = 6);

}  // namespace casimir::response
