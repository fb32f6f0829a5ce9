#include "casimir/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace casimir::response {

namespace {

constexpr double kPi = std::numbers::pi;
// Nodes where (kappa' + kappa'') L exceeds its minimum k L by this much are
// dropped: their weight is below e^{-60} relative to the ridge.
constexpr double kExponentCutoff = 60.0;

using nonspec::SurfaceMode;
using nonspec::Vec2;

// Integrates node(xi, out_mode, in_mode) over xi in (0, inf), k' over the
// plane (polar, centred on k' = 0), with k_in = k' - k e_direction.
template <class NodeFn>
quad::IntegralResult momentum_frequency_integral(const ResponseQuery& q, NodeFn&& node) {
  q.cavity.validate();
  q.quad.validate();
  if (!(q.k >= 0.0)) throw std::invalid_argument("response: k must be non-negative");
  using NodeResult = std::decay_t<
      std::invoke_result_t<NodeFn&, double, const SurfaceMode&, const SurfaceMode&>>;

  const auto& material = q.cavity.material;
  const double L = q.cavity.L;
  const double k = q.k;
  const bool full_circle = q.direction != 0.0;
  const Vec2 transfer{k * std::cos(q.direction), k * std::sin(q.direction)};

  // Region (kappa' + kappa'') <= k + cutoff/L: an ellipse in (k', xi) with
  // foci 0 and k along the corrugation axis (the minimum over theta).
  const double semi_major = 0.5 * (k + kExponentCutoff / L);
  const double half_k = 0.5 * k;
  const double semi_minor = std::sqrt(semi_major * semi_major - half_k * half_k);

  const quad::QuadratureSpec radial_spec = q.quad.inner();
  const quad::QuadratureSpec angular_spec = radial_spec.inner();
  const double radial_scale = 1.0 / L + half_k;
  const double theta_max = full_circle ? 2.0 * kPi : kPi;

  auto over_momentum = [&](double xi) {
    const double ratio = xi / semi_minor;
    if (ratio >= 1.0) return quad::IntegralResult{};
    const double k_max = half_k + semi_major * std::sqrt(1.0 - ratio * ratio);
    auto over_angle = [&](double kr) {
      if (kr == 0.0 && xi == 0.0) return quad::IntegralResult{};
      // Magnitude-dependent quantities of k' are shared by all theta.
      const SurfaceMode radial = nonspec::make_surface_mode(material, Vec2{kr, 0.0}, xi);
      auto at_theta = [&](double theta) -> NodeResult {
        SurfaceMode out = radial;
        out.k = Vec2{kr * std::cos(theta), kr * std::sin(theta)};
        const SurfaceMode in = nonspec::make_surface_mode(material, out.k - transfer, xi);
        if (in.kappa == 0.0) return NodeResult{};
        return node(xi, out, in);
      };
      quad::IntegralResult r = quad::integrate_interval(at_theta, 0.0, theta_max, angular_spec);
      r.value *= kr;
      r.error *= kr;
      return r;
    };
    return quad::integrate_mapped(over_angle, 0.0, radial_scale, k_max, radial_spec);
  };

  const double xi_scale = lifshitz::natural_xi_scale(q.cavity);
  quad::IntegralResult out = quad::integrate_mapped(
      over_momentum, 0.0, q.quad.transform_scale > 0.0 ? q.quad.transform_scale : xi_scale,
      semi_minor, q.quad);
  // -(1/2pi) * (1/(2pi)^2), times 2 for the half-circle.
  const double norm = -(full_circle ? 1.0 : 2.0) / (8.0 * kPi * kPi * kPi);
  out.value *= norm;
  out.error *= std::abs(norm);
  return out;
}

double kernel_from_terms_at(const KernelTerms& t, double L) {
  const double x_out = std::exp(-2.0 * t.kappa_out * L);
  const double x_in = std::exp(-2.0 * t.kappa_in * L);
  double sum = 0.0;
  for (int po = 0; po < 2; ++po) {
    const double d_out = 1.0 - t.spec2_out[po] * x_out;
    for (int pi = 0; pi < 2; ++pi) {
      sum += t.numer[po][pi] / (d_out * (1.0 - t.spec2_in[pi] * x_in));
    }
  }
  return sum * std::exp(-(t.kappa_out + t.kappa_in) * L);
}

}  // namespace

double KernelTerms::at(double L) const { return kernel_from_terms_at(*this, L); }

quad::IntegralResult KernelTerms::integrated_from(double L,
                                                  const quad::QuadratureSpec& spec) const {
  const double rate = kappa_out + kappa_in;
  if (rate == 0.0) return {};
  return quad::integrate_mapped([this](double l) { return at(l); }, L, 1.0 / rate,
                                std::numeric_limits<double>::infinity(), spec);
}

KernelTerms kernel_terms(const SurfaceMode& out, const SurfaceMode& in, double xi_over_c,
                         double plasma_wavenumber_sq) {
  KernelTerms t;
  const auto [c, s] = nonspec::channel_angle(in.k, out.k);
  const double xi2 = xi_over_c * xi_over_c;
  const double q2 = plasma_wavenumber_sq;
  const double common = 4.0 * out.kappa * in.kappa * q2 * q2;
  constexpr int te = 0;
  constexpr int tm = 1;
  const double a_te = c / (out.den_te * in.den_te);
  const double a_tm = ((xi2 + q2) * out.k_norm * in.k_norm + xi2 * out.kappa_m * in.kappa_m * c) /
                      (out.den_tm * in.den_tm);
  const double a_te_tm = xi_over_c * in.kappa_m * s / (out.den_te * in.den_tm);
  const double a_tm_te = xi_over_c * out.kappa_m * s / (out.den_tm * in.den_te);
  // R_{p'p}(out<-in) R_{pp'}(in<-out); the sine changes sign on the way back.
  t.numer[te][te] = common * a_te * a_te;
  t.numer[tm][tm] = common * a_tm * a_tm;
  t.numer[te][tm] = common * a_te_tm * a_te_tm;
  t.numer[tm][te] = common * a_tm_te * a_tm_te;
  t.spec2_out[te] = out.specular_te * out.specular_te;
  t.spec2_out[tm] = out.specular_tm * out.specular_tm;
  t.spec2_in[te] = in.specular_te * in.specular_te;
  t.spec2_in[tm] = in.specular_tm * in.specular_tm;
  t.kappa_out = out.kappa;
  t.kappa_in = in.kappa;
  return t;
}

double kernel_b(const lifshitz::CavityConfig& cavity, Vec2 k_out, Vec2 k_in, double xi_over_c) {
  if (!(xi_over_c > 0.0)) throw std::invalid_argument("kernel_b: xi/c must be positive");
  const auto& mat = cavity.material;
  const SurfaceMode out = nonspec::make_surface_mode(mat, k_out, xi_over_c);
  const SurfaceMode in = nonspec::make_surface_mode(mat, k_in, xi_over_c);
  const auto forward = nonspec::first_order_amplitudes(out, in, xi_over_c,
                                                       mat.plasma_wavenumber_sq());
  const auto backward = nonspec::first_order_amplitudes(in, out, xi_over_c,
                                                        mat.plasma_wavenumber_sq());
  const double L = cavity.L;
  double sum = 0.0;
  for (auto po : medium::kPolarizations) {
    const double r_out = out.specular(po);
    const double d_out = 1.0 - r_out * r_out * std::exp(-2.0 * out.kappa * L);
    for (auto pi : medium::kPolarizations) {
      const double r_in = in.specular(pi);
      const double d_in = 1.0 - r_in * r_in * std::exp(-2.0 * in.kappa * L);
      sum += forward(po, pi) * backward(pi, po) / (d_out * d_in);
    }
  }
  return sum * std::exp(-(out.kappa + in.kappa) * L);
}

quad::IntegralResult response_G(const ResponseQuery& query) {
  const double q2 = query.cavity.material.plasma_wavenumber_sq();
  const double L = query.cavity.L;
  return momentum_frequency_integral(query, [q2, L](double xi, const SurfaceMode& out,
                                                    const SurfaceMode& in) {
    return kernel_terms(out, in, xi, q2).at(L);
  });
}

quad::IntegralResult response_G_integrated(const ResponseQuery& query) {
  const double q2 = query.cavity.material.plasma_wavenumber_sq();
  const double L = query.cavity.L;
  const quad::QuadratureSpec separation_spec = query.quad.inner().inner();
  return momentum_frequency_integral(
      query, [q2, L, &separation_spec](double xi, const SurfaceMode& out, const SurfaceMode& in) {
        return kernel_terms(out, in, xi, q2).integrated_from(L, separation_spec);
      });
}

quad::IntegralResult rho(const ResponseQuery& query) {
  ResponseQuery at_zero = query;
  at_zero.k = 0.0;
  at_zero.direction = 0.0;
  return rho(query, response_G(at_zero));
}

quad::IntegralResult rho(const ResponseQuery& query, const quad::IntegralResult& g0) {
  if (query.k == 0.0) {
    quad::IntegralResult one = g0;
    one.value = 1.0;
    one.error = 0.0;
    return one;
  }
  const quad::IntegralResult gk = response_G(query);
  quad::IntegralResult out;
  out.value = gk.value / g0.value;
  out.error = std::abs(out.value) *
              (std::abs(gk.error / gk.value) + std::abs(g0.error / g0.value));
  out.evaluations = gk.evaluations + g0.evaluations;
  out.converged = gk.converged && g0.converged;
  out.depth = std::max(gk.depth, g0.depth);
  return out;
}

AsymptoteFit fit_asymptote_samples(double L, const std::vector<double>& ks,
                                   const std::vector<double>& values) {
  if (ks.size() != values.size() || ks.size() < 2) {
    throw std::invalid_argument("fit_asymptote: need at least two matching samples");
  }
  AsymptoteFit fit;
  fit.ks = ks;
  fit.values = values;
  fit.fit_window = {*std::min_element(ks.begin(), ks.end()),
                    *std::max_element(ks.begin(), ks.end())};
  // Minimise sum ((G_i - alpha f_i) / G_i)^2 with f_i = k_i e^{-k_i L}.
  double num = 0.0;
  double den = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double mean = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double u = ks[i] * std::exp(-ks[i] * L) / values[i];
    num += u;
    den += u * u;
    const double shape = values[i] / (ks[i] * std::exp(-ks[i] * L));
    lo = std::min(lo, shape);
    hi = std::max(hi, shape);
    mean += shape;
  }
  mean /= static_cast<double>(ks.size());
  fit.alpha = num / den;
  fit.spread = (hi - lo) / std::abs(mean);
  double ss = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double rel = 1.0 - fit.alpha * ks[i] * std::exp(-ks[i] * L) / values[i];
    ss += rel * rel;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(ks.size()));

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double y = std::log(std::abs(values[i] / ks[i]));
    sx += ks[i];
    sy += y;
    sxx += ks[i] * ks[i];
    sxy += ks[i] * y;
  }
  fit.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

AsymptoteFit fit_asymptote(const lifshitz::CavityConfig& cavity,
                           std::pair<double, double> k_window, const quad::QuadratureSpec& spec,
                           int n_points) {
  const auto [k_lo, k_hi] = k_window;
  if (!(k_lo > 0.0) || !(k_hi > k_lo) || n_points < 2) {
    throw std::invalid_argument("fit_asymptote: invalid k window");
  }
  if (k_lo * cavity.L < 5.0 || k_lo * cavity.material.plasma_wavelength() < 5.0) {
    throw std::invalid_argument(
        "fit_asymptote: window outside the asymptotic regime (need kL >= 5 and k lambda_P >= 5)");
  }
  std::vector<double> ks(static_cast<std::size_t>(n_points));
  std::vector<double> gs(ks.size());
  for (int i = 0; i < n_points; ++i) {
    ks[static_cast<std::size_t>(i)] =
        k_lo * std::pow(k_hi / k_lo, static_cast<double>(i) / (n_points - 1));
  }
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_points; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    ResponseQuery q{ks[idx], cavity, spec, 0.0};
    gs[idx] = response_G(q).value;
  }
  return fit_asymptote_samples(cavity.L, ks, gs);
}

}  // namespace casimir::response
