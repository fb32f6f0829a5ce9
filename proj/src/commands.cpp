#include "casimir/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

#include "casimir/lateral.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/response.hpp"

namespace casimir::cli {

namespace {

constexpr double kDefaultLambdaC = 1200.0;
constexpr double kRhoDefaultL = 200.0;
constexpr double kSphereDefaultL = 221.0;

template <class Fn>
void parallel_rows(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> failures(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

void write_row(std::ostream& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

void check_range(double lo, double hi, bool log_spacing, const char* what) {
  if (!(hi > lo)) throw UsageError(std::string(what) + ": empty range");
  if (log_spacing && !(lo > 0.0)) {
    throw UsageError(std::string(what) + ": log spacing needs a positive lower bound");
  }
}

}  // namespace

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<double> spaced(double lo, double hi, int n, bool log_spacing) {
  if (n < 1) throw UsageError("points must be at least 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[static_cast<std::size_t>(i)] =
        log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  return v;
}

bool cmd_rho(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const std::vector<double> Ls = cfg.L.empty() ? std::vector<double>{kRhoDefaultL} : cfg.L;
  const double k_lo = cfg.k_min.value_or(0.0);
  const double k_hi = cfg.k_max.value_or(0.03);
  check_range(k_lo, k_hi, cfg.log_spacing, "rho");
  const std::vector<double> ks = spaced(k_lo, k_hi, cfg.points.value_or(31), cfg.log_spacing);
  const medium::PlasmaMaterial material{cfg.lambda_p};
  const quad::QuadratureSpec spec = cfg.quadrature();

  std::vector<quad::IntegralResult> g0(Ls.size());
  parallel_rows(Ls.size(), [&](std::size_t i) {
    g0[i] = response::response_G({0.0, {Ls[i], material}, spec, 0.0});
  });
  std::vector<quad::IntegralResult> rows(Ls.size() * ks.size());
  parallel_rows(rows.size(), [&](std::size_t idx) {
    const std::size_t i = idx / ks.size();
    const response::ResponseQuery q{ks[idx % ks.size()], {Ls[i], material}, spec, 0.0};
    rows[idx] = response::rho(q, g0[i]);
  });

  const bool batch = Ls.size() > 1;
  if (batch) write_row(out, {"L_nm", "k_nm_inv", "rho", "rho_error"});
  else write_row(out, {"k_nm_inv", "rho", "rho_error"});
  bool converged = true;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const auto& r = rows[idx];
    converged = converged && r.converged;
    const std::string k = fmt(ks[idx % ks.size()]);
    if (batch) write_row(out, {fmt(Ls[idx / ks.size()]), k, fmt(r.value), fmt(r.error)});
    else write_row(out, {k, fmt(r.value), fmt(r.error)});
  }
  out << "# lambda_p_nm = " << fmt(cfg.lambda_p) << '\n';
  out << "# converged = " << (converged ? "true" : "false") << '\n';
  return converged;
}

bool cmd_force_vs_k(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double L = cfg.separation(kSphereDefaultL);
  const double k_lo = cfg.k_min.value_or(0.001);
  const double k_hi = cfg.k_max.value_or(0.03);
  check_range(k_lo, k_hi, cfg.log_spacing, "force-vs-k");
  if (!(k_lo > 0.0)) throw UsageError("force-vs-k: k-min must be positive");
  const std::vector<double> ks = spaced(k_lo, k_hi, cfg.points.value_or(30), cfg.log_spacing);
  const medium::PlasmaMaterial material{cfg.lambda_p};
  const quad::QuadratureSpec spec = cfg.quadrature();
  const lateral::SphereSetup setup{cfg.radius, L};

  std::vector<lateral::ForceResult> exact(ks.size());
  std::vector<lateral::ForceResult> pfa(ks.size());
  parallel_rows(ks.size(), [&](std::size_t i) {
    const auto corr =
        lateral::CorrugationPair::from_wavenumber(cfg.a1, cfg.a2, ks[i], cfg.mismatch(ks[i]));
    exact[i] = lateral::lateral_force_ps(setup, corr, material, spec);
    pfa[i] = lateral::pfa_lateral_force_ps(setup, corr, material, spec);
  });

  std::size_t peak = 0;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (std::abs(exact[i].value) > std::abs(exact[peak].value)) peak = i;
  }
  write_row(out, {"k_nm_inv", "F_exact_pN", "F_pfa_pN", "error_pN", "peak"});
  bool converged = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    converged = converged && exact[i].converged && pfa[i].converged;
    write_row(out, {fmt(ks[i]), fmt(exact[i].value), fmt(pfa[i].value),
                    fmt(exact[i].error_estimate), i == peak ? "1" : "0"});
  }
  out << "# L_nm = " << fmt(L) << '\n';
  out << "# peak_k_nm_inv = " << fmt(ks[peak]) << '\n';
  out << "# peak_kL = " << fmt(ks[peak] * L) << '\n';
  for (const auto& flag : exact[peak].regime_flags) {
    out << "# flag_" << flag.name << " = " << (flag.ok ? "ok" : "violated") << '\n';
  }
  out << "# converged = " << (converged ? "true" : "false") << '\n';
  return converged;
}

bool cmd_force_vs_L(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double k = cfg.wavenumber(kDefaultLambdaC);
  if (cfg.b) throw UsageError("force-vs-L: output is normalized by sin(kb); b is not used");
  const double L_lo = cfg.L_min.value_or(100.0);
  const double L_hi = cfg.L_max.value_or(1200.0);
  std::vector<double> Ls;
  if (!cfg.L.empty()) {
    Ls = cfg.L;
    std::sort(Ls.begin(), Ls.end());
  } else {
    check_range(L_lo, L_hi, true, "force-vs-L");
    Ls = spaced(L_lo, L_hi, cfg.points.value_or(24), true);
  }
  const medium::PlasmaMaterial material{cfg.lambda_p};
  const quad::QuadratureSpec spec = cfg.quadrature();
  const auto rows = lateral::force_vs_L_sweep(material, k, cfg.radius, Ls, spec);

  write_row(out, {"L_nm", "F_exact_norm", "F_pfa_norm", "F_pfa_perfect_norm",
                  "F_pfa_plasmon_norm", "F_exact_error_norm"});
  bool converged = true;
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    converged = converged && r.converged;
    write_row(out, {fmt(r.L), fmt(r.exact), fmt(r.pfa), fmt(r.pfa_perfect), fmt(r.pfa_plasmon),
                    fmt(r.exact_error)});
    xs.push_back(r.L);
    ys.push_back(r.exact);
  }
  const std::pair<double, double> window{cfg.fit_min.value_or(150.0), cfg.fit_max.value_or(300.0)};
  out << "# k_nm_inv = " << fmt(k) << '\n';
  out << "# units = pN/nm^2 (force divided by a1*a2*sin(kb))\n";
  out << "# fit_window_nm = " << fmt(window.first) << ',' << fmt(window.second) << '\n';
  try {
    const auto fit = lateral::power_law_fit(xs, ys, window);
    out << "# fit_exponent = " << fmt(fit.exponent) << '\n';
    out << "# fit_points = " << fit.points << '\n';
  } catch (const std::invalid_argument&) {
    out << "# fit_exponent = nan (fewer than 5 points in window)\n";
  }
  out << "# converged = " << (converged ? "true" : "false") << '\n';
  return converged;
}

bool cmd_plane_plane(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double L = cfg.separation(kRhoDefaultL);
  const lifshitz::CavityConfig cavity{L, medium::PlasmaMaterial{cfg.lambda_p}};
  const quad::QuadratureSpec spec = cfg.quadrature();
  const auto e = lifshitz::energy_per_area(cavity, spec);
  const auto e1 = lifshitz::d1_energy_per_area(cavity, spec);
  const auto e2 = lifshitz::d2_energy_per_area(cavity, spec);

  // Five-point central differences of e with step L/200 at tight tolerance.
  const quad::QuadratureSpec fd_spec = spec.tightened(1e-4);
  const double h = L / 200.0;
  double ev[5];
  bool converged = e.converged && e1.converged && e2.converged;
  for (int i = 0; i < 5; ++i) {
    const auto r = lifshitz::energy_per_area({L + (i - 2) * h, cavity.material}, fd_spec);
    ev[i] = r.value;
    converged = converged && r.converged;
  }
  const double fd1 = (-ev[4] + 8.0 * ev[3] - 8.0 * ev[1] + ev[0]) / (12.0 * h);
  const double fd2 = (-ev[4] + 16.0 * ev[3] - 30.0 * ev[2] + 16.0 * ev[1] - ev[0]) / (12.0 * h * h);

  auto line = [&](const char* name, double v) { out << name << " = " << fmt(v) << '\n'; };
  line("L_nm", L);
  line("lambda_p_nm", cfg.lambda_p);
  line("e_hbarc_nm3", e.value);
  line("e_error", e.error);
  line("d1e_hbarc_nm4", e1.value);
  line("d1e_error", e1.error);
  line("d2e_hbarc_nm5", e2.value);
  line("d2e_error", e2.error);
  line("d1e_finite_difference", fd1);
  line("d2e_finite_difference", fd2);
  line("d1e_fd_rel_diff", fd1 / e1.value - 1.0);
  line("d2e_fd_rel_diff", fd2 / e2.value - 1.0);
  line("e_over_perfect", e.value / lifshitz::perfect_mirror_energy(L));
  line("d1e_over_perfect", e1.value / lifshitz::perfect_mirror_d1(L));
  line("d2e_over_perfect", e2.value / lifshitz::perfect_mirror_d2(L));
  out << "signs_ok = " << ((e.value < 0 && e1.value > 0 && e2.value < 0) ? "true" : "false")
      << '\n';
  out << "converged = " << (converged ? "true" : "false") << '\n';
  return converged;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"rho", "force-vs-k", "force-vs-L",
                                                 "plane-plane"};
  return names;
}

bool run(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "rho") return cmd_rho(cfg, out);
  if (cfg.command == "force-vs-k") return cmd_force_vs_k(cfg, out);
  if (cfg.command == "force-vs-L") return cmd_force_vs_L(cfg, out);
  if (cfg.command == "plane-plane") return cmd_plane_plane(cfg, out);
  throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace casimir::cli
