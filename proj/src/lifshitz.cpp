#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace casimir::lifshitz {

namespace {

constexpr double kPi = std::numbers::pi;

// Integrand of e^(order)(L) at one (xi, k) node, summed over polarizations.
double flat_integrand(const CavityConfig& cavity, double xi, double k, int order) {
  const double q2 = cavity.material.plasma_wavenumber_sq();
  const double kap = std::hypot(k, xi);
  if (kap == 0.0) return 0.0;
  const double kap_m = std::sqrt(kap * kap + q2);
  const double sum = kap + kap_m;
  const double xi2 = xi * xi;
  const double r_te = -q2 / (sum * sum);
  const double r_tm = q2 * (k * k + kap * kap_m) / (sum * ((xi2 + q2) * kap + xi2 * kap_m));
  const double decay = std::exp(-2.0 * kap * cavity.L);
  double total = 0.0;
  for (double r : {r_te, r_tm}) {
    const double x = r * r * decay;
    switch (order) {
      case 0:
        total += std::log1p(-x);
        break;
      case 1:
        total += 2.0 * kap * x / (1.0 - x);
        break;
      default:
        total -= 4.0 * kap * kap * x / ((1.0 - x) * (1.0 - x));
        break;
    }
  }
  return total;
}

quad::IntegralResult flat_integral(const CavityConfig& cavity, const quad::QuadratureSpec& spec,
                                   int order) {
  cavity.validate();
  spec.validate();
  const quad::QuadratureSpec inner = spec.inner();
  const double k_scale = 1.0 / cavity.L;
  auto over_k = [&](double xi) {
    return quad::integrate_semi_infinite(
        [&](double k) { return k * flat_integrand(cavity, xi, k, order); }, inner, k_scale);
  };
  quad::IntegralResult out =
      quad::integrate_semi_infinite(over_k, spec, natural_xi_scale(cavity));
  const double norm = 1.0 / (4.0 * kPi * kPi);
  out.value *= norm;
  out.error *= norm;
  return out;
}

}  // namespace

void CavityConfig::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("CavityConfig: separation L must be positive and finite");
  }
}

double natural_xi_scale(const CavityConfig& cavity) {
  const double inv_l = 1.0 / cavity.L;
  const double kp = cavity.material.plasma_wavenumber();
  return kp > 0.0 ? std::min(kp, inv_l) : inv_l;
}

quad::IntegralResult energy_per_area(const CavityConfig& cavity,
                                     const quad::QuadratureSpec& spec) {
  return flat_integral(cavity, spec, 0);
}

quad::IntegralResult d1_energy_per_area(const CavityConfig& cavity,
                                        const quad::QuadratureSpec& spec) {
  return flat_integral(cavity, spec, 1);
}

quad::IntegralResult d2_energy_per_area(const CavityConfig& cavity,
                                        const quad::QuadratureSpec& spec) {
  return flat_integral(cavity, spec, 2);
}

double perfect_mirror_energy(double L) { return -kPi * kPi / (720.0 * L * L * L); }

double perfect_mirror_d1(double L) { return kPi * kPi / (240.0 * std::pow(L, 4)); }

double perfect_mirror_d2(double L) { return -kPi * kPi / (60.0 * std::pow(L, 5)); }

quad::IntegralResult plasmon_energy_per_area(const CavityConfig& cavity,
                                             const quad::QuadratureSpec& spec) {
  cavity.validate();
  spec.validate();
  const double q2 = cavity.material.plasma_wavenumber_sq();
  if (q2 == 0.0) return {};
  const quad::QuadratureSpec inner = spec.inner();
  const double L = cavity.L;
  auto over_k = [&](double xi) {
    const double r = q2 / (2.0 * xi * xi + q2);
    return quad::integrate_semi_infinite(
        [&](double k) { return k * std::log1p(-r * r * std::exp(-2.0 * k * L)); }, inner,
        1.0 / L);
  };
  quad::IntegralResult out =
      quad::integrate_semi_infinite(over_k, spec, cavity.material.plasma_wavenumber());
  const double norm = 1.0 / (4.0 * kPi * kPi);
  out.value *= norm;
  out.error *= norm;
  return out;
}

quad::IntegralResult plasmon_d1(const CavityConfig& cavity, const quad::QuadratureSpec& spec) {
  quad::IntegralResult e = plasmon_energy_per_area(cavity, spec);
  e.value *= -2.0 / cavity.L;
  e.error *= 2.0 / cavity.L;
  return e;
}

}  // namespace casimir::lifshitz
