#pragma once

// Plane-plane Casimir energy per unit area between two identical flat
// plasma-model mirrors, its first two derivatives in the separation, and the
// closed-form perfect-mirror and plasmon references.
//
// All energies are in hbar*c*nm^-3; derivatives carry extra nm^-1 per order.

#include "casimir/medium.hpp"
#include "casimir/quad.hpp"

namespace casimir::lifshitz {

struct CavityConfig {
  double L = 0.0;  ///< mean separation, nm
  medium::PlasmaMaterial material{136.0};

  void validate() const;
};

/// Scale used to map the frequency integral onto (0, 1): the smaller of the
/// plasma wavenumber and 1/L, which is where the integrand actually lives.
double natural_xi_scale(const CavityConfig& cavity);

/// e(L) = (1/2pi) int d(xi/c) int d^2k/(2pi)^2 sum_p ln(1 - r_p^2 e^{-2 kappa L}).
quad::IntegralResult energy_per_area(const CavityConfig& cavity,
                                     const quad::QuadratureSpec& spec = {});

/// e'(L), derivative taken analytically under the integral sign.
quad::IntegralResult d1_energy_per_area(const CavityConfig& cavity,
                                        const quad::QuadratureSpec& spec = {});

/// e''(L), derivative taken analytically under the integral sign.
quad::IntegralResult d2_energy_per_area(const CavityConfig& cavity,
                                        const quad::QuadratureSpec& spec = {});

/// -pi^2 / (720 L^3)
double perfect_mirror_energy(double L);
/// pi^2 / (240 L^4)
double perfect_mirror_d1(double L);
/// -pi^2 / (60 L^5)
double perfect_mirror_d2(double L);

/// Non-retarded (surface-plasmon) limit of e(L), valid for L << lambda_P.
/// Scales exactly as L^-2.
quad::IntegralResult plasmon_energy_per_area(const CavityConfig& cavity,
                                             const quad::QuadratureSpec& spec = {});

/// d/dL of the plasmon-limit energy, -2 e_pl(L) / L.
quad::IntegralResult plasmon_d1(const CavityConfig& cavity,
                                const quad::QuadratureSpec& spec = {});

}  // namespace casimir::lifshitz
