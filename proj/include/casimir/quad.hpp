#pragma once

// Deterministic adaptive quadrature shared by every integral in the library.
//
// The engine is a global-adaptive bisection scheme (the panel with the
// largest error estimate is split until the tolerance is met). Integrands may
// return either a plain double or a nested IntegralResult; in the nested case
// the inner error estimates and convergence flags are propagated outwards.
//
// Results are bit-identical for any OpenMP thread count: panel nodes may be
// evaluated concurrently, but the final value is a pairwise sum over panels
// taken in ascending left-endpoint order.

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace casimir::quad {

enum class Rule { GaussKronrod15, ClenshawCurtis33 };

struct QuadratureSpec {
  double rel_tol = 1e-5;
  double abs_tol = 0.0;
  int max_depth = 30;
  int max_subdivisions = 200;
  Rule base_rule = Rule::GaussKronrod15;
  /// Scale s of the map x = s t / (1 - t) used for the outermost frequency
  /// integral. A value <= 0 lets the caller pick the integrand's natural scale.
  double transform_scale = 0.0;
  /// Evaluate panel nodes of this (outermost) level concurrently.
  bool parallel = false;

  /// Throws std::invalid_argument when rel_tol < 1e-10, max_depth > 40, ...
  void validate() const;

  /// Spec for a nested integral one level down: one decade tighter, serial.
  [[nodiscard]] QuadratureSpec inner() const;

  /// Both tolerances multiplied by factor (clamped at the rel_tol floor).
  [[nodiscard]] QuadratureSpec tightened(double factor) const;
};

inline constexpr double kMinRelTol = 1e-10;
inline constexpr int kMaxDepthLimit = 40;

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
  /// Deepest bisection level reached (0 = the undivided interval).
  int depth = 0;
};

/// Nodes on [-1, 1] with the base rule weights and the weights of the
/// embedded lower-order rule (zero at nodes the lower rule does not use).
struct PanelRule {
  std::span<const double> nodes;
  std::span<const double> weights;
  std::span<const double> low_weights;
  bool kronrod = false;
};

const PanelRule& panel_rule(Rule rule);

/// Pairwise (cascade) summation; order of the input is preserved.
double pairwise_sum(std::span<const double> values);

namespace detail {

template <class R>
inline constexpr bool is_nested_v = std::is_same_v<std::decay_t<R>, IntegralResult>;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  int depth = 0;
  double value = 0.0;
  double error = 0.0;
  double inner_error = 0.0;
  long evaluations = 0;
  bool inner_converged = true;
};

inline double value_of(double v) { return v; }
inline double value_of(const IntegralResult& r) { return r.value; }

// Combines node samples of one panel into value and error estimates.
template <class R>
void close_panel(Panel& p, const PanelRule& rule, std::span<const R> samples) {
  const double half = 0.5 * (p.b - p.a);
  const std::size_t n = rule.nodes.size();
  double res = 0.0;
  double low = 0.0;
  double resabs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = value_of(samples[i]);
    res += rule.weights[i] * f;
    low += rule.low_weights[i] * f;
    resabs += rule.weights[i] * std::abs(f);
  }
  double err = std::abs(res - low) * std::abs(half);
  if (rule.kronrod) {
    const double mean = 0.5 * res;
    double resasc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      resasc += rule.weights[i] * std::abs(value_of(samples[i]) - mean);
    }
    resasc *= std::abs(half);
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
  }
  resabs *= std::abs(half);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  p.value = res * half;
  p.error = err;
  p.evaluations = static_cast<long>(n);
  p.inner_error = 0.0;
  p.inner_converged = true;
  if constexpr (is_nested_v<R>) {
    for (std::size_t i = 0; i < n; ++i) {
      p.inner_error += rule.weights[i] * samples[i].error;
      p.evaluations += samples[i].evaluations;
      p.inner_converged = p.inner_converged && samples[i].converged;
    }
    p.inner_error *= std::abs(half);
  }
}

// Evaluates the nodes of a batch of panels, concurrently when allowed.
template <class F>
void evaluate_panels(F& f, std::span<Panel> panels, const PanelRule& rule, bool parallel) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  constexpr std::size_t kStackSamples = 66;
  const std::size_t n = rule.nodes.size();
  const std::size_t total = n * panels.size();
  std::array<R, kStackSamples> local{};
  std::vector<R> heap;
  std::span<R> samples;
  if (total <= kStackSamples) {
    samples = std::span<R>(local.data(), total);
  } else {
    heap.resize(total);
    samples = std::span<R>(heap);
  }
  const bool go_parallel = parallel && !omp_in_parallel() && omp_get_max_threads() > 1;
  if (go_parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
      const auto& p = panels[static_cast<std::size_t>(idx) / n];
      const double t = rule.nodes[static_cast<std::size_t>(idx) % n];
      try {
        samples[static_cast<std::size_t>(idx)] = f(0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * t);
      } catch (...) {
#pragma omp critical(casimir_quad_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t idx = 0; idx < total; ++idx) {
      const auto& p = panels[idx / n];
      samples[idx] = f(0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * rule.nodes[idx % n]);
    }
  }
  for (std::size_t k = 0; k < panels.size(); ++k) {
    close_panel<R>(panels[k], rule, std::span<const R>(samples.subspan(k * n, n)));
  }
}

inline bool panel_accepted(const Panel& p, const QuadratureSpec& spec) {
  return p.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(p.value));
}

inline IntegralResult single_panel_result(const Panel& p) {
  IntegralResult out;
  out.value = p.value;
  out.error = p.error + p.inner_error;
  out.evaluations = p.evaluations;
  out.converged = p.inner_converged;
  return out;
}

}  // namespace detail

/// Adaptive integral of f over [a, b].
template <class F>
IntegralResult integrate_interval(F&& f, double a, double b, const QuadratureSpec& spec) {
  if (!(a <= b)) throw std::invalid_argument("integrate_interval: requires a <= b");
  if (a == b) return {};
  const PanelRule& rule = panel_rule(spec.base_rule);

  detail::Panel first;
  first.a = a;
  first.b = b;
  detail::evaluate_panels(f, std::span(&first, 1), rule, spec.parallel);
  if (detail::panel_accepted(first, spec)) return detail::single_panel_result(first);
  std::vector<detail::Panel> panels{first};

  bool converged = false;
  int subdivisions = 0;
  while (true) {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
      converged = true;
      break;
    }
    if (subdivisions >= spec.max_subdivisions) break;
    std::size_t worst = panels.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (panels[i].depth >= spec.max_depth) continue;
      if (worst == panels.size() || panels[i].error > panels[worst].error) worst = i;
    }
    if (worst == panels.size()) break;

    const detail::Panel parent = panels[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    std::array<detail::Panel, 2> halves{};
    halves[0].a = parent.a;
    halves[0].b = mid;
    halves[1].a = mid;
    halves[1].b = parent.b;
    halves[0].depth = halves[1].depth = parent.depth + 1;
    detail::evaluate_panels(f, std::span(halves), rule, spec.parallel);
    panels[worst] = halves[0];
    panels.push_back(halves[1]);
    ++subdivisions;
  }

  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  std::vector<double> values(panels.size());
  std::vector<double> errors(panels.size());
  IntegralResult out;
  out.converged = converged;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    values[i] = panels[i].value;
    errors[i] = panels[i].error + panels[i].inner_error;
    out.evaluations += panels[i].evaluations;
    out.converged = out.converged && panels[i].inner_converged;
    out.depth = std::max(out.depth, panels[i].depth);
  }
  out.value = pairwise_sum(values);
  out.error = pairwise_sum(errors);
  return out;
}

/// Integral of f over [a, x_end) under the map x = a + s t / (1 - t).
/// With x_end = +inf this is the semi-infinite integral; f must decay.
template <class F>
IntegralResult integrate_mapped(F&& f, double a, double scale, double x_end,
                                const QuadratureSpec& spec) {
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_mapped: scale must be positive");
  if (!(x_end >= a)) throw std::invalid_argument("integrate_mapped: requires x_end >= a");
  const double t_end = std::isinf(x_end) ? 1.0 : (x_end - a) / (scale + (x_end - a));
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  auto mapped = [&](double t) -> R {
    if (t >= 1.0) return R{};
    const double one_minus = 1.0 - t;
    const double jac = scale / (one_minus * one_minus);
    R r = f(a + scale * t / one_minus);
    if constexpr (detail::is_nested_v<R>) {
      r.value *= jac;
      r.error *= jac;
    } else {
      r *= jac;
    }
    return r;
  };
  return integrate_interval(mapped, 0.0, t_end, spec);
}

/// Integral of f over (0, inf) via x = s t / (1 - t). spec.transform_scale,
/// when positive, overrides natural_scale.
template <class F>
IntegralResult integrate_semi_infinite(F&& f, const QuadratureSpec& spec,
                                       double natural_scale = 1.0) {
  const double s = spec.transform_scale > 0.0 ? spec.transform_scale : natural_scale;
  return integrate_mapped(std::forward<F>(f), 0.0, s, std::numeric_limits<double>::infinity(),
                          spec);
}

/// (1/(2pi)^2) * 2 * int_0^r_max r dr int_0^pi dtheta f(r, theta), for f even in
/// theta. The radial map uses radial_scale; r_max may be +inf.
template <class F>
IntegralResult integrate_polar(F&& f, const QuadratureSpec& spec, double radial_scale = 1.0,
                               double r_max = std::numeric_limits<double>::infinity()) {
  const QuadratureSpec angular_spec = spec.inner();
  QuadratureSpec radial_spec = spec;
  radial_spec.transform_scale = 0.0;
  auto radial = [&](double r) {
    IntegralResult inner = integrate_interval(
        [&](double theta) { return f(r, theta); }, 0.0, std::numbers::pi, angular_spec);
    inner.value *= r;
    inner.error *= r;
    return inner;
  };
  IntegralResult out = integrate_mapped(radial, 0.0, radial_scale, r_max, radial_spec);
  constexpr double norm = 2.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  out.value *= norm;
  out.error *= norm;
  return out;
}

}  // namespace casimir::quad
