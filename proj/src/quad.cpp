#include "casimir/quad.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace casimir::quad {

namespace {

// Kronrod 15-point nodes with the embedded 7-point Gauss rule, full [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk15Tables {
  std::array<double, 15> nodes{};
  std::array<double, 15> weights{};
  std::array<double, 15> gauss{};
  Gk15Tables() {
    for (int j = 0; j < 7; ++j) {
      nodes[j] = -kXgk[j];
      nodes[14 - j] = kXgk[j];
      weights[j] = weights[14 - j] = kWgk[j];
      if (j % 2 == 1) gauss[j] = gauss[14 - j] = kWg[j / 2];
    }
    nodes[7] = 0.0;
    weights[7] = kWgk[7];
    gauss[7] = kWg[3];
  }
};

// Clenshaw-Curtis on cos(j pi / N); the order-N/2 rule lives on even j.
template <int N>
struct ClenshawCurtisTables {
  std::array<double, N + 1> nodes{};
  std::array<double, N + 1> weights{};
  std::array<double, N + 1> low{};

  static double weight(int n, int j) {
    double sum = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
      const double bk = (2 * k == n) ? 1.0 : 2.0;
      sum += bk / (4.0 * k * k - 1.0) * std::cos(2.0 * k * j * std::numbers::pi / n);
    }
    const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
    return cj / n * (1.0 - sum);
  }

  ClenshawCurtisTables() {
    for (int j = 0; j <= N; ++j) {
      // Ascending order on [-1, 1].
      nodes[j] = -std::cos(j * std::numbers::pi / N);
      weights[j] = weight(N, j);
      low[j] = (j % 2 == 0) ? weight(N / 2, j / 2) : 0.0;
    }
  }
};

}  // namespace

const PanelRule& panel_rule(Rule rule) {
  static const Gk15Tables gk;
  static const ClenshawCurtisTables<32> cc;
  static const PanelRule gk_rule{gk.nodes, gk.weights, gk.gauss, true};
  static const PanelRule cc_rule{cc.nodes, cc.weights, cc.low, false};
  return rule == Rule::GaussKronrod15 ? gk_rule : cc_rule;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void QuadratureSpec::validate() const {
  if (!(rel_tol >= kMinRelTol)) {
    throw std::invalid_argument("QuadratureSpec: rel_tol must be >= 1e-10, got " +
                                std::to_string(rel_tol));
  }
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
  if (max_depth < 1 || max_depth > kMaxDepthLimit) {
    throw std::invalid_argument("QuadratureSpec: max_depth must lie in [1, 40]");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be positive");
  }
}

QuadratureSpec QuadratureSpec::inner() const {
  QuadratureSpec s = *this;
  s.rel_tol = std::max(kMinRelTol, 0.1 * rel_tol);
  s.abs_tol = 0.1 * abs_tol;
  s.parallel = false;
  s.transform_scale = 0.0;
  return s;
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec s = *this;
  s.rel_tol = std::max(kMinRelTol, rel_tol * factor);
  s.abs_tol = abs_tol * factor;
  return s;
}

}  // namespace casimir::quad
