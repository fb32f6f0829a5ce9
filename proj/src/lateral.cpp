#include "casimir/lateral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "casimir/units.hpp"

namespace casimir::lateral {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTailDecades = 60.0;

quad::IntegralResult scaled(quad::IntegralResult r, double factor) {
  r.value *= factor;
  r.error *= std::abs(factor);
  return r;
}

std::vector<ValidityFlag> sphere_flags(const SphereSetup& setup, const CorrugationPair& corr,
                                       const medium::PlasmaMaterial& material) {
  return {{"perturbative", corr.perturbative(setup.L, material)},
          {"curvature", setup.curvature_ok()},
          {"corrugation_curvature", corr.k == 0.0 || setup.corrugation_curvature_ok(corr.lambda_c)}};
}

// pi a1 a2 k R sin(kb) in nm^3 times hbar*c; multiplies an integral in nm^-4.
double sphere_prefactor(const SphereSetup& setup, const CorrugationPair& corr) {
  return kPi * corr.a1 * corr.a2 * corr.k * setup.R * corr.sin_kb();
}

ForceResult to_force(const quad::IntegralResult& integral, double prefactor,
                     std::vector<ValidityFlag> flags) {
  ForceResult f;
  f.value = to_piconewton(prefactor * integral.value);
  f.error_estimate = std::abs(to_piconewton(prefactor * integral.error));
  f.converged = integral.converged;
  f.regime_flags = std::move(flags);
  return f;
}

}  // namespace

double to_piconewton(double force_hbar_c_per_nm2) {
  return force_hbar_c_per_nm2 * units::kForcePerHbarCNm2InPn;
}

CorrugationPair CorrugationPair::from_period(double a1, double a2, double lambda_c, double b) {
  if (!(lambda_c > 0.0)) throw std::invalid_argument("CorrugationPair: lambda_C must be positive");
  CorrugationPair c{a1, a2, lambda_c, kTwoPi / lambda_c, b};
  c.validate();
  return c;
}

CorrugationPair CorrugationPair::from_wavenumber(double a1, double a2, double k, double b) {
  if (!(k >= 0.0)) throw std::invalid_argument("CorrugationPair: k must be non-negative");
  const double lambda_c = k > 0.0 ? kTwoPi / k : std::numeric_limits<double>::infinity();
  CorrugationPair c{a1, a2, lambda_c, k, b};
  c.validate();
  return c;
}

double CorrugationPair::cos_kb() const { return std::cos(k * b); }

double CorrugationPair::sin_kb() const { return std::sin(k * b); }

void CorrugationPair::validate() const {
  if (!(a1 >= 0.0) || !(a2 >= 0.0)) {
    throw std::invalid_argument("CorrugationPair: amplitudes must be non-negative");
  }
  if (!(lambda_c > 0.0) || !(k >= 0.0)) {
    throw std::invalid_argument("CorrugationPair: invalid corrugation period");
  }
  if (!std::isfinite(b)) throw std::invalid_argument("CorrugationPair: mismatch must be finite");
}

bool CorrugationPair::perturbative(double L, const medium::PlasmaMaterial& material) const {
  const double smallest = std::min({L, lambda_c, material.plasma_wavelength()});
  return std::max(a1, a2) <= 0.25 * smallest;
}

void SphereSetup::validate() const {
  if (!(R > 0.0) || !(L > 0.0) || !std::isfinite(R) || !std::isfinite(L)) {
    throw std::invalid_argument("SphereSetup: R and L must be positive and finite");
  }
}

bool ForceResult::all_flags_ok() const {
  return std::all_of(regime_flags.begin(), regime_flags.end(),
                     [](const ValidityFlag& f) { return f.ok; });
}

quad::IntegralResult lateral_energy_pp(const lifshitz::CavityConfig& cavity,
                                       const CorrugationPair& corr,
                                       const quad::QuadratureSpec& spec) {
  corr.validate();
  const quad::IntegralResult g = response::response_G({corr.k, cavity, spec, 0.0});
  return scaled(g, 0.5 * corr.a1 * corr.a2 * corr.cos_kb());
}

quad::IntegralResult lateral_force_pp(const lifshitz::CavityConfig& cavity,
                                      const CorrugationPair& corr,
                                      const quad::QuadratureSpec& spec) {
  corr.validate();
  const quad::IntegralResult g = response::response_G({corr.k, cavity, spec, 0.0});
  return scaled(g, 0.5 * corr.a1 * corr.a2 * corr.k * corr.sin_kb());
}

quad::IntegralResult separation_integral(double k, const lifshitz::CavityConfig& cavity,
                                         const quad::QuadratureSpec& spec, TailMethod method) {
  if (!(k >= 0.0)) throw std::invalid_argument("separation_integral: k must be non-negative");
  if (k == 0.0) return lifshitz::d1_energy_per_area(cavity, spec);
  if (method == TailMethod::PerNode) {
    return scaled(response::response_G_integrated({k, cavity, spec, 0.0}), -1.0);
  }
  const double L = cavity.L;
  const double L_end = L + kTailDecades / k;
  const quad::QuadratureSpec g_spec = spec.inner();
  auto g_at = [&](double l) {
    lifshitz::CavityConfig c = cavity;
    c.L = l;
    return response::response_G({k, c, g_spec, 0.0});
  };
  quad::IntegralResult direct = quad::integrate_mapped(g_at, L, L, L_end, spec);
  const quad::IntegralResult tail = scaled(g_at(L_end), 1.0 / k);
  direct.value += tail.value;
  direct.error += tail.error;
  direct.converged = direct.converged && tail.converged;
  return scaled(direct, -1.0);
}

ForceResult lateral_force_ps(const SphereSetup& setup, const CorrugationPair& corr,
                             const medium::PlasmaMaterial& material,
                             const quad::QuadratureSpec& spec, TailMethod method) {
  setup.validate();
  corr.validate();
  const lifshitz::CavityConfig cavity{setup.L, material};
  const quad::IntegralResult integral = separation_integral(corr.k, cavity, spec, method);
  return to_force(integral, sphere_prefactor(setup, corr), sphere_flags(setup, corr, material));
}

ForceResult pfa_lateral_force_ps(const SphereSetup& setup, const CorrugationPair& corr,
                                 const medium::PlasmaMaterial& material,
                                 const quad::QuadratureSpec& spec) {
  setup.validate();
  corr.validate();
  const lifshitz::CavityConfig cavity{setup.L, material};
  const quad::IntegralResult d1 = lifshitz::d1_energy_per_area(cavity, spec);
  return to_force(d1, sphere_prefactor(setup, corr), sphere_flags(setup, corr, material));
}

double perfect_mirror_pfa_force_ps(const SphereSetup& setup, const CorrugationPair& corr) {
  setup.validate();
  corr.validate();
  return to_piconewton(sphere_prefactor(setup, corr) * lifshitz::perfect_mirror_d1(setup.L));
}

std::vector<SweepRow> force_vs_L_sweep(const medium::PlasmaMaterial& material, double k,
                                       double R, const std::vector<double>& Ls,
                                       const quad::QuadratureSpec& spec) {
  if (!std::is_sorted(Ls.begin(), Ls.end()) ||
      std::any_of(Ls.begin(), Ls.end(), [](double l) { return !(l > 0.0); })) {
    throw std::invalid_argument("force_vs_L_sweep: separations must be positive and sorted");
  }
  if (!(k > 0.0)) throw std::invalid_argument("force_vs_L_sweep: k must be positive");
  const CorrugationPair unit =
      CorrugationPair::from_wavenumber(1.0, 1.0, k, CorrugationPair::quarter_period_shift(k));
  std::vector<SweepRow> rows(Ls.size());
  std::vector<std::exception_ptr> failures(Ls.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(Ls.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const SphereSetup setup{R, Ls[idx]};
      const lifshitz::CavityConfig cavity{Ls[idx], material};
      const double pre = kPi * k * R;
      SweepRow row;
      row.L = Ls[idx];
      const ForceResult exact = lateral_force_ps(setup, unit, material, spec);
      row.exact = exact.value;
      row.exact_error = exact.error_estimate;
      const quad::IntegralResult d1 = lifshitz::d1_energy_per_area(cavity, spec);
      row.pfa = to_piconewton(pre * d1.value);
      row.pfa_perfect = to_piconewton(pre * lifshitz::perfect_mirror_d1(Ls[idx]));
      const quad::IntegralResult pl = lifshitz::plasmon_d1(cavity, spec);
      row.pfa_plasmon = to_piconewton(pre * pl.value);
      row.converged = exact.converged && d1.converged && pl.converged;
      rows[idx] = row;
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return rows;
}

PowerLawFit power_law_fit(const std::vector<double>& xs, const std::vector<double>& ys,
                          std::pair<double, double> window) {
  if (xs.size() != ys.size()) throw std::invalid_argument("power_law_fit: size mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= window.first && xs[i] <= window.second && xs[i] > 0.0 && ys[i] != 0.0) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(std::abs(ys[i])));
    }
  }
  if (lx.size() < 5) throw std::invalid_argument("power_law_fit: fewer than 5 points in window");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = lx.size();
  return fit;
}

OptimumResult maximise(const std::function<double(double)>& f, double k_lo, double k_hi,
                       int n_scan, double rel_tol) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo) || n_scan < 3 || !(rel_tol > 0.0)) {
    throw std::invalid_argument("maximise: invalid search range");
  }
  OptimumResult out;
  out.scan_k.resize(static_cast<std::size_t>(n_scan));
  out.scan_f.resize(out.scan_k.size());
  for (int i = 0; i < n_scan; ++i) {
    out.scan_k[static_cast<std::size_t>(i)] =
        k_lo * std::pow(k_hi / k_lo, static_cast<double>(i) / (n_scan - 1));
  }
  std::vector<std::exception_ptr> failures(out.scan_k.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_scan; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out.scan_f[idx] = f(out.scan_k[idx]);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }

  const auto best = static_cast<std::size_t>(
      std::max_element(out.scan_f.begin(), out.scan_f.end()) - out.scan_f.begin());
  int local_maxima = 0;
  for (std::size_t i = 1; i + 1 < out.scan_f.size(); ++i) {
    if (out.scan_f[i] > out.scan_f[i - 1] && out.scan_f[i] >= out.scan_f[i + 1]) ++local_maxima;
  }
  out.unimodal = local_maxima == 1;
  out.k_opt = out.scan_k[best];
  out.f_max = out.scan_f[best];
  if (best == 0 || best + 1 == out.scan_k.size()) {
    out.unimodal = false;
    return out;
  }

  // Golden section in log k between the neighbours of the best scan point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(out.scan_k[best - 1]);
  double b = std::log(out.scan_k[best + 1]);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(std::exp(c));
  double fd = f(std::exp(d));
  const double tol = std::log1p(rel_tol);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(std::exp(d));
    }
  }
  const double k_mid = std::exp(0.5 * (a + b));
  const double f_mid = f(k_mid);
  if (f_mid >= out.f_max) {
    out.k_opt = k_mid;
    out.f_max = f_mid;
  }
  return out;
}

OptimumResult optimum_k(const medium::PlasmaMaterial& material, const SphereSetup& setup,
                        double a1, double a2, const quad::QuadratureSpec& spec,
                        std::pair<double, double> k_range) {
  setup.validate();
  if (k_range.first <= 0.0 || k_range.second <= k_range.first) {
    k_range = {0.1 / setup.L, 10.0 / setup.L};
  }
  bool all_converged = true;
  auto force = [&](double k) {
    CorrugationPair corr =
        CorrugationPair::from_wavenumber(a1, a2, k, CorrugationPair::quarter_period_shift(k));
    const ForceResult r = lateral_force_ps(setup, corr, material, spec);
    if (!r.converged) {
#pragma omp atomic write
      all_converged = false;
    }
    return std::abs(r.value);
  };
  OptimumResult out = maximise(force, k_range.first, k_range.second, 9, 1e-2);
  out.converged = all_converged;
  return out;
}

}  // namespace casimir::lateral
