#include "casimir/nonspec.hpp"

namespace casimir::nonspec {

using medium::Polarization;

SurfaceMode make_surface_mode(const medium::PlasmaMaterial& material, Vec2 k,
                              double xi_over_c) {
  SurfaceMode m;
  const double q2 = material.plasma_wavenumber_sq();
  const double xi2 = xi_over_c * xi_over_c;
  m.k = k;
  m.k_norm = k.norm();
  m.kappa = std::hypot(m.k_norm, xi_over_c);
  m.kappa_m = std::sqrt(m.kappa * m.kappa + q2);
  m.den_te = m.kappa + m.kappa_m;
  m.den_tm = (xi2 + q2) * m.kappa + xi2 * m.kappa_m;
  m.specular_te = -q2 / (m.den_te * m.den_te);
  m.specular_tm = m.den_tm > 0.0 ? -q2 * (m.k_norm * m.k_norm + m.kappa * m.kappa_m) /
                                       (m.den_te * m.den_tm)
                                 : 0.0;
  return m;
}

ChannelAngle channel_angle(Vec2 k_in, Vec2 k_out) {
  const double n = k_in.norm() * k_out.norm();
  if (n == 0.0) return {};
  return {(k_in.x * k_out.x + k_in.y * k_out.y) / n, (k_in.x * k_out.y - k_in.y * k_out.x) / n};
}

NonSpecMatrix first_order_amplitudes(const SurfaceMode& out, const SurfaceMode& in,
                                     double xi_over_c, double plasma_wavenumber_sq) {
  const auto [c, s] = channel_angle(in.k, out.k);
  const double xi2 = xi_over_c * xi_over_c;
  const double pre = -2.0 * in.kappa * plasma_wavenumber_sq;
  NonSpecMatrix m;
  auto& e = m.entries;
  constexpr int te = static_cast<int>(Polarization::TE);
  constexpr int tm = static_cast<int>(Polarization::TM);
  e[te][te] = pre * c / (out.den_te * in.den_te);
  e[tm][tm] = pre * ((xi2 + plasma_wavenumber_sq) * out.k_norm * in.k_norm +
                     xi2 * out.kappa_m * in.kappa_m * c) /
              (out.den_tm * in.den_tm);
  e[te][tm] = -pre * xi_over_c * in.kappa_m * s / (out.den_te * in.den_tm);
  e[tm][te] = pre * xi_over_c * out.kappa_m * s / (out.den_tm * in.den_te);
  return m;
}

NonSpecMatrix first_order_amplitudes(const medium::PlasmaMaterial& material,
                                     const ScatteringChannel& channel) {
  const SurfaceMode out = make_surface_mode(material, channel.k_out, channel.xi_over_c);
  const SurfaceMode in = make_surface_mode(material, channel.k_in, channel.xi_over_c);
  return first_order_amplitudes(out, in, channel.xi_over_c, material.plasma_wavenumber_sq());
}

double specular_amplitude(const medium::PlasmaMaterial& material, const medium::Mode& mode) {
  const double r = medium::fresnel(material, mode);
  return mode.polarization == Polarization::TE ? r : -r;
}

}  // namespace casimir::nonspec
