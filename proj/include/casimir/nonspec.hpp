#pragma once

// First-order non-specular reflection amplitudes of a corrugated plasma-model
// mirror at imaginary frequency.
//
// A profile h(r) (positive when the surface moves towards the cavity) with
// Fourier transform H(q) = int d^2r e^{-iq.r} h(r) scatters a plane wave of
// lateral wavevector k_in into k_out = k_in + q with amplitude
// R(k_out, k_in) H(k_out - k_in).
//
// Amplitudes are expressed in the lateral-field basis: the TE component of a
// wave is its lateral electric field along z x k^, the TM component is its
// lateral electric field along k^ scaled by (xi/c)/kappa. The lateral field is
// unchanged by the mirror z -> -z, so both plates of a cavity share the same
// amplitude functions. The specular amplitudes in this basis are (r_TE, -r_TM)
// and every diagonal entry obeys R_pp(k, k) = 2 kappa * specular_p(k).

#include <array>
#include <cmath>

#include "casimir/medium.hpp"

namespace casimir::nonspec {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
};

struct ScatteringChannel {
  Vec2 k_in;
  Vec2 k_out;
  double xi_over_c = 0.0;
};

/// Quantities of one lateral wavevector at fixed xi that every channel
/// touching it reuses. den_tm is the TM Fresnel denominator multiplied by
/// xi^2, which keeps it finite as xi -> 0.
struct SurfaceMode {
  Vec2 k;
  double k_norm = 0.0;
  double kappa = 0.0;
  double kappa_m = 0.0;
  double den_te = 0.0;
  double den_tm = 0.0;
  double specular_te = 0.0;
  double specular_tm = 0.0;

  double specular(medium::Polarization p) const {
    return p == medium::Polarization::TE ? specular_te : specular_tm;
  }
};

SurfaceMode make_surface_mode(const medium::PlasmaMaterial& material, Vec2 k,
                              double xi_over_c);

/// 2x2 amplitude matrix indexed [p_out][p_in], in nm^-1 (per unit height).
struct NonSpecMatrix {
  std::array<std::array<double, 2>, 2> entries{};

  double operator()(medium::Polarization out, medium::Polarization in) const {
    return entries[static_cast<int>(out)][static_cast<int>(in)];
  }
};

/// Cosine and signed sine of the angle from k_in to k_out. Either vector at
/// zero gives (1, 0).
struct ChannelAngle {
  double cos = 1.0;
  double sin = 0.0;
};
ChannelAngle channel_angle(Vec2 k_in, Vec2 k_out);

NonSpecMatrix first_order_amplitudes(const medium::PlasmaMaterial& material,
                                     const ScatteringChannel& channel);

NonSpecMatrix first_order_amplitudes(const SurfaceMode& out, const SurfaceMode& in,
                                     double xi_over_c, double plasma_wavenumber_sq);

/// Specular amplitude in the lateral-field basis: r_TE for TE, -r_TM for TM.
double specular_amplitude(const medium::PlasmaMaterial& material, const medium::Mode& mode);

}  // namespace casimir::nonspec
