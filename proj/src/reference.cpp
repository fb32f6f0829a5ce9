#include "casimir/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "casimir/medium.hpp"
#include "casimir/quad.hpp"
#include "casimir/response.hpp"

namespace casimir::reference {

namespace {

constexpr double kPi = std::numbers::pi;

template <class RowFn>
double sum_rows(int rows, Execution exec, RowFn&& row) {
  std::vector<double> partial(static_cast<std::size_t>(rows));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < rows; ++i) partial[static_cast<std::size_t>(i)] = row(i);
  } else {
    for (int i = 0; i < rows; ++i) partial[static_cast<std::size_t>(i)] = row(i);
  }
  return quad::pairwise_sum(partial);
}

double flat_term(double r, double decay, double kap, int order) {
  const double x = r * r * decay;
  switch (order) {
    case 0:
      return std::log1p(-x);
    case 1:
      return 2.0 * kap * x / (1.0 - x);
    default:
      return -4.0 * kap * kap * x / ((1.0 - x) * (1.0 - x));
  }
}

}  // namespace

Grid1D gauss_legendre_grid(double a, double b, int n) {
  if (n <= 0 || n % 4 != 0) throw std::invalid_argument("gauss_legendre_grid: n % 4 != 0");
  static const double x4[] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                              0.8611363115940526};
  static const double w4[] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                              0.3478548451374538};
  Grid1D g;
  const int panels = n / 4;
  const double h = (b - a) / panels;
  g.nodes.reserve(static_cast<std::size_t>(n));
  g.weights.reserve(static_cast<std::size_t>(n));
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int j = 0; j < 4; ++j) {
      g.nodes.push_back(mid + 0.5 * h * x4[j]);
      g.weights.push_back(0.5 * h * w4[j]);
    }
  }
  return g;
}

double flat_energy_grid(const lifshitz::CavityConfig& cavity, int order, int n_kappa,
                        int n_angle, Execution exec) {
  cavity.validate();
  const auto& mat = cavity.material;
  const double L = cavity.L;
  const Grid1D ts = gauss_legendre_grid(0.0, 1.0, n_kappa);
  const Grid1D phis = gauss_legendre_grid(0.0, 0.5 * kPi, n_angle);
  // xi = kappa sin(phi), k = kappa cos(phi); d xi k dk = kappa^2 cos(phi) dkappa dphi.
  const double total = sum_rows(n_kappa, exec, [&](int i) {
    const double t = ts.nodes[static_cast<std::size_t>(i)];
    const double kap = t / (1.0 - t) / L;
    const double jac = 1.0 / (L * (1.0 - t) * (1.0 - t));
    const double decay = std::exp(-2.0 * kap * L);
    double row = 0.0;
    for (int j = 0; j < n_angle; ++j) {
      const double phi = phis.nodes[static_cast<std::size_t>(j)];
      const double xi = kap * std::sin(phi);
      const double k = kap * std::cos(phi);
      double f = 0.0;
      for (auto p : medium::kPolarizations) {
        f += flat_term(medium::fresnel(mat, {k, xi, p}), decay, kap, order);
      }
      row += phis.weights[static_cast<std::size_t>(j)] * std::cos(phi) * f;
    }
    return ts.weights[static_cast<std::size_t>(i)] * jac * kap * kap * row;
  });
  return total / (4.0 * kPi * kPi);
}

double response_G_grid(double k, const lifshitz::CavityConfig& cavity, int n, Execution exec) {
  cavity.validate();
  if (!(k >= 0.0)) throw std::invalid_argument("response_G_grid: k must be non-negative");
  const double L = cavity.L;
  const double xi_scale = lifshitz::natural_xi_scale(cavity);
  const double r_scale = 1.0 / L + 0.5 * k;
  const Grid1D ts = gauss_legendre_grid(0.0, 1.0, n);
  const Grid1D thetas = gauss_legendre_grid(0.0, kPi, n);
  const double total = sum_rows(n, exec, [&](int i) {
    const double t = ts.nodes[static_cast<std::size_t>(i)];
    const double xi = xi_scale * t / (1.0 - t);
    const double xi_jac = xi_scale / ((1.0 - t) * (1.0 - t));
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = ts.nodes[static_cast<std::size_t>(j)];
      const double r = r_scale * u / (1.0 - u);
      const double r_jac = r_scale / ((1.0 - u) * (1.0 - u));
      double ang = 0.0;
      for (int m = 0; m < n; ++m) {
        const double th = thetas.nodes[static_cast<std::size_t>(m)];
        const nonspec::Vec2 k_out{r * std::cos(th), r * std::sin(th)};
        const nonspec::Vec2 k_in{k_out.x - k, k_out.y};
        ang += thetas.weights[static_cast<std::size_t>(m)] *
               response::kernel_b(cavity, k_out, k_in, xi);
      }
      row += ts.weights[static_cast<std::size_t>(j)] * r_jac * r * ang;
    }
    return ts.weights[static_cast<std::size_t>(i)] * xi_jac * row;
  });
  return -2.0 * total / (8.0 * kPi * kPi * kPi);
}

}  // namespace casimir::reference
