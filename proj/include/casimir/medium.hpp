#pragma once

// Plasma-model dielectric response and specular Fresnel amplitudes at
// imaginary frequency. All quantities are real on the imaginary axis.

#include <cmath>

namespace casimir::medium {

enum class Polarization { TE, TM };

inline constexpr Polarization kPolarizations[] = {Polarization::TE, Polarization::TM};

const char* to_string(Polarization p);

/// Metal described by eps(i xi) = 1 + (omega_P / xi)^2.
///
/// The plasma wavelength may be +inf, which gives a transparent medium
/// (plasma wavenumber zero).
class PlasmaMaterial {
 public:
  /// Throws std::invalid_argument unless plasma_wavelength_nm > 0.
  explicit PlasmaMaterial(double plasma_wavelength_nm);

  double plasma_wavelength() const { return wavelength_; }
  /// omega_P / c = 2 pi / lambda_P, in nm^-1.
  double plasma_wavenumber() const { return wavenumber_; }
  double plasma_wavenumber_sq() const { return wavenumber_ * wavenumber_; }

 private:
  double wavelength_;
  double wavenumber_;
};

/// A field mode at imaginary frequency: lateral wavenumber, xi/c, polarization.
struct Mode {
  double k = 0.0;
  double xi_over_c = 0.0;
  Polarization polarization = Polarization::TE;
};

/// eps(i xi) = 1 + (k_P / (xi/c))^2. Throws std::domain_error at xi = 0
/// (static-limit singularity); callers integrate in a variable that avoids it.
double epsilon_imag(const PlasmaMaterial& material, double xi_over_c);

/// Vacuum decay constant sqrt(k^2 + (xi/c)^2).
inline double kappa(double k, double xi_over_c) { return std::hypot(k, xi_over_c); }

/// Decay constant inside the metal, sqrt(kappa^2 + k_P^2).
double kappa_medium(const PlasmaMaterial& material, double k, double xi_over_c);

/// Specular reflection amplitude r_p. TE lies in (-1, 0) and TM in (0, 1)
/// for xi > 0. Evaluated in cancellation-free form, so the limit xi -> 0 at
/// k > 0 is also finite (r_TM -> 1).
double fresnel(const PlasmaMaterial& material, const Mode& mode);

}  // namespace casimir::medium
