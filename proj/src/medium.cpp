#include "casimir/medium.hpp"

#include <numbers>
#include <stdexcept>

namespace casimir::medium {

const char* to_string(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

PlasmaMaterial::PlasmaMaterial(double plasma_wavelength_nm)
    : wavelength_(plasma_wavelength_nm),
      wavenumber_(2.0 * std::numbers::pi / plasma_wavelength_nm) {
  if (!(plasma_wavelength_nm > 0.0)) {
    throw std::invalid_argument("PlasmaMaterial: plasma wavelength must be positive");
  }
}

double epsilon_imag(const PlasmaMaterial& material, double xi_over_c) {
  if (xi_over_c == 0.0) {
    throw std::domain_error("epsilon_imag: static-limit singularity at xi = 0");
  }
  if (!(xi_over_c > 0.0)) throw std::invalid_argument("epsilon_imag: xi/c must be positive");
  const double ratio = material.plasma_wavenumber() / xi_over_c;
  return 1.0 + ratio * ratio;
}

double kappa_medium(const PlasmaMaterial& material, double k, double xi_over_c) {
  const double kap = kappa(k, xi_over_c);
  return std::sqrt(kap * kap + material.plasma_wavenumber_sq());
}

double fresnel(const PlasmaMaterial& material, const Mode& mode) {
  const double q2 = material.plasma_wavenumber_sq();
  const double kap = kappa(mode.k, mode.xi_over_c);
  const double kap_m = std::sqrt(kap * kap + q2);
  const double sum = kap + kap_m;
  if (mode.polarization == Polarization::TE) {
    // (kappa - kappa_m) / (kappa + kappa_m), with kappa^2 - kappa_m^2 = -k_P^2.
    return -q2 / (sum * sum);
  }
  // (eps kappa - kappa_m) / (eps kappa + kappa_m), numerator and denominator
  // multiplied by xi^2 so that eps never appears explicitly.
  const double xi2 = mode.xi_over_c * mode.xi_over_c;
  const double den = (xi2 + q2) * kap + xi2 * kap_m;
  if (den == 0.0) return 0.0;
  return q2 * (mode.k * mode.k + kap * kap_m) / (sum * den);
}

}  // namespace casimir::medium
