#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/reference.hpp"
#include "casimir/response.hpp"
#include "doctest.h"
#include "oracles/bvp_oracle.hpp"

using namespace casimir;
using lifshitz::CavityConfig;
using nonspec::Vec2;
using response::ResponseQuery;

namespace {

const medium::PlasmaMaterial kGold{136.0};

double G(double k, double L, double direction = 0.0, double tol = 1e-5) {
  quad::QuadratureSpec s;
  s.rel_tol = tol;
  return response::response_G({k, {L, kGold}, s, direction}).value;
}

}  // namespace

TEST_CASE("kernel agrees with the boundary-value round-trip trace") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kd(-0.02, 0.02);
  std::uniform_real_distribution<double> xd(1e-4, 0.03);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 k1{kd(rng), kd(rng)};
    const Vec2 k2{kd(rng), kd(rng)};
    const double xi = xd(rng);
    const double L = 200.0;
    const double lib = response::kernel_b({L, kGold}, k1, k2, xi);
    const double ref = oracle::kernel_trace(k1.x, k1.y, k2.x, k2.y, xi, kGold.plasma_wavenumber_sq(), L);
    INFO("trial " << trial);
    CHECK(lib == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("integration path kernel equals the amplitude-matrix kernel") {
  const double q2 = kGold.plasma_wavenumber_sq();
  for (double L : {20.0, 200.0, 900.0}) {
    const Vec2 k1{0.004, 0.009};
    const Vec2 k2{-0.0012, 0.009};
    const double xi = 0.003;
    const auto out = nonspec::make_surface_mode(kGold, k1, xi);
    const auto in = nonspec::make_surface_mode(kGold, k2, xi);
    CHECK(response::kernel_terms(out, in, xi, q2).at(L) ==
          doctest::Approx(response::kernel_b({L, kGold}, k1, k2, xi)).epsilon(1e-12));
  }
}

TEST_CASE("kernel exponential cutoff and large-L denominators") {
  const Vec2 k1{0.01, 0.0};
  const Vec2 k2{0.0, 0.01};
  const double xi = 0.002;
  const double kap = std::hypot(0.01, xi);
  const double L20 = 20.0 / kap;
  const double near = response::kernel_b({1e-9, kGold}, k1, k2, xi);
  const double far = response::kernel_b({L20, kGold}, k1, k2, xi);
  CHECK(std::abs(far) <= std::exp(-40.0) * std::abs(near));

  const double q2 = kGold.plasma_wavenumber_sq();
  const auto t = response::kernel_terms(nonspec::make_surface_mode(kGold, k1, xi),
                                        nonspec::make_surface_mode(kGold, k2, xi), xi, q2);
  double numer = 0.0;
  for (auto& row : t.numer)
    for (double v : row) numer += v;
  const double Lbig = 300.0 / kap;
  CHECK(t.at(Lbig) * std::exp(2.0 * kap * Lbig) == doctest::Approx(numer).epsilon(1e-12));
}

TEST_CASE("kernel reciprocity") {
  const Vec2 kp{0.006, 0.004};
  const Vec2 k{0.006, -0.004};  // |k'| = |k' - k| with k along y
  for (double xi : {1e-3, 0.02}) {
    const double a = response::kernel_b({150.0, kGold}, kp, k, xi);
    const double b = response::kernel_b({150.0, kGold}, k, kp, xi);
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
  CHECK_THROWS_AS(response::kernel_b({150.0, kGold}, kp, k, 0.0), std::invalid_argument);
}

TEST_CASE("G(0) reproduces the second derivative of the flat energy") {
  for (double L : {50.0, 200.0}) {
    quad::QuadratureSpec s;
    s.rel_tol = 1e-7;
    const auto g0 = response::response_G({0.0, {L, kGold}, s, 0.0});
    const auto e2 = lifshitz::d2_energy_per_area({L, kGold}, s);
    CHECK(g0.converged);
    CHECK(g0.value == doctest::Approx(e2.value).epsilon(1e-6));
  }
}

TEST_CASE("G against the fixed-grid oracle") {
  const CavityConfig c{200.0, kGold};
  for (double k : {0.0, 0.0052, 0.02}) {
    const double grid = reference::response_G_grid(k, c, 96);
    INFO("k = " << k);
    CHECK(G(k, 200.0) == doctest::Approx(grid).epsilon(1e-4));
  }
  CHECK(reference::response_G_grid(0.0052, c, 24, reference::Execution::Serial) ==
        reference::response_G_grid(0.0052, c, 24, reference::Execution::Parallel));
}

TEST_CASE("sign, range of rho and ordering in L") {
  std::vector<double> Ls = {50.0, 100.0, 200.0, 400.0};
  for (double k : {0.001, 0.005, 0.01, 0.02, 0.04}) {
    double prev_rho = 2.0;
    for (double L : Ls) {
      quad::QuadratureSpec s;
      const auto r = response::rho({k, {L, kGold}, s, 0.0});
      CHECK(G(k, L) < 0.0);
      CHECK(r.value > 0.0);
      CHECK(r.value <= 1.0 + 1e-9);
      CHECK(r.value < prev_rho);
      prev_rho = r.value;
    }
  }
  CHECK(G(0.3, 200.0) < 0.0);
  CHECK(std::abs(G(0.3, 200.0)) < 1e-10 * std::abs(G(0.0, 200.0)));
}

TEST_CASE("rho at k = 0 and at short separation") {
  quad::QuadratureSpec s;
  const auto one = response::rho({0.0, {200.0, kGold}, s, 0.0});
  CHECK(one.value == 1.0);
  CHECK(one.error == 0.0);
  for (double k : {0.002, 0.005, 0.01}) {
    const auto r = response::rho({k, {50.0, kGold}, s, 0.0});
    CHECK(r.value > 0.95);
  }
}

TEST_CASE("small-k behaviour: Richardson extrapolation to rho(0) = 1") {
  // 1 - rho = c k^2 - d |k|^3 + ...; eliminate the k^2, k^3 and k^4 terms.
  quad::QuadratureSpec s;
  s.rel_tol = 1e-8;
  const quad::IntegralResult g0 = response::response_G({0.0, {200.0, kGold}, s, 0.0});
  std::vector<double> r;
  for (double h : {1e-3, 5e-4, 2.5e-4, 1.25e-4}) r.push_back(response::rho({h, {200.0, kGold}, s, 0.0}, g0).value);
  double factor = 4.0;
  for (std::size_t level = 1; level < 4; ++level) {
    for (std::size_t i = 0; i + level < 4; ++i) r[i] = (factor * r[i + 1] - r[i]) / (factor - 1.0);
    factor *= 2.0;
  }
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-6));
  const double q1 = 1.0 - response::rho({2.5e-4, {200.0, kGold}, s, 0.0}, g0).value;
  const double q2 = 1.0 - response::rho({1.25e-4, {200.0, kGold}, s, 0.0}, g0).value;
  CHECK(q1 / q2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("isotropy") {
  for (double k : {0.004, 0.015}) {
    const double gx = G(k, 200.0);
    for (double dir : {std::numbers::pi / 2, 0.7, 2.9}) {
      CHECK(G(k, 200.0, dir) == doctest::Approx(gx).epsilon(1e-6));
    }
  }
}

TEST_CASE("tolerance halving stays within the error estimate") {
  for (double k : {0.0, 0.0052, 0.03}) {
    quad::QuadratureSpec a;
    a.rel_tol = 1e-5;
    quad::QuadratureSpec b = a;
    b.rel_tol = 5e-6;
    const auto ra = response::response_G({k, {200.0, kGold}, a, 0.0});
    const auto rb = response::response_G({k, {200.0, kGold}, b, 0.0});
    CHECK(std::abs(ra.value - rb.value) <= ra.error);
  }
}

TEST_CASE("separation-integrated G matches its definition") {
  const double L = 221.0, k = 0.0052;
  quad::QuadratureSpec s;
  const auto integrated = response::response_G_integrated({k, {L, kGold}, s, 0.0});
  const auto direct = quad::integrate_mapped(
      [&](double l) { return response::response_G({k, {l, kGold}, s.inner(), 0.0}); }, L, L,
      std::numeric_limits<double>::infinity(), s);
  CHECK(integrated.value == doctest::Approx(direct.value).epsilon(1e-5));
}

TEST_CASE("asymptote fit on synthetic data") {
  const double L = 200.0, alpha0 = -3.7e-9;
  std::vector<double> ks, gs;
  for (double k = 0.05; k <= 0.1001; k += 0.01) {
    ks.push_back(k);
    gs.push_back(alpha0 * k * std::exp(-k * L));
  }
  const auto fit = response::fit_asymptote_samples(L, ks, gs);
  CHECK(fit.alpha == doctest::Approx(alpha0).epsilon(1e-6));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.spread < 1e-12);
  CHECK(fit.log_slope == doctest::Approx(-L).epsilon(1e-9));
}

TEST_CASE("asymptote fit rejects windows outside its regime") {
  quad::QuadratureSpec s;
  CHECK_THROWS_AS(response::fit_asymptote({200.0, kGold}, {0.01, 0.02}, s), std::invalid_argument);
  CHECK_THROWS_AS(response::fit_asymptote({200.0, medium::PlasmaMaterial{20.0}}, {0.03, 0.06}, s),
                  std::invalid_argument);
  CHECK_THROWS_AS(response::fit_asymptote({200.0, kGold}, {0.06, 0.05}, s), std::invalid_argument);
}

TEST_CASE("computed G at large k: log-slope of G/k against -L") {
  // G/k decays as e^{-kL} up to a power-law prefactor, whose share of the
  // slope falls off as 1/k.
  quad::QuadratureSpec s;
  const auto fit = response::fit_asymptote({200.0, kGold}, {0.3, 0.6}, s, 5);
  MESSAGE("alpha " << fit.alpha << " spread " << fit.spread << " log slope " << fit.log_slope);
  CHECK(fit.log_slope == doctest::Approx(-200.0).epsilon(0.05));
  for (double g : fit.values) CHECK(g < 0.0);
}

TEST_CASE("invalid queries") {
  quad::QuadratureSpec s;
  CHECK_THROWS_AS(response::response_G({-0.1, {200.0, kGold}, s, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(response::response_G({0.1, {0.0, kGold}, s, 0.0}), std::invalid_argument);
}
