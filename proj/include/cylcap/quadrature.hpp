#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace cylcap {

/// Settings for adaptive composite Gauss-Legendre integration.
struct QuadratureSpec {
  int points = 16;          // nodes per panel
  double rel_tol = 1e-10;   // relative to the magnitude of the integral
  double abs_tol = 1e-15;
  int max_depth = 30;       // panel bisections below a breakpoint interval
};

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule with n nodes (n >= 1). Safe to call concurrently.
const GaussLegendreRule& gauss_legendre_rule(int n);

namespace detail {

template <class F>
double gauss_panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

template <class F>
double adapt(const F& f, double a, double b, double whole, double tol, int depth,
             const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid, rule);
  const double right = gauss_panel(f, mid, b, rule);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= tol) return refined;
  return adapt(f, a, mid, left, 0.5 * tol, depth - 1, rule) +
         adapt(f, mid, b, right, 0.5 * tol, depth - 1, rule);
}

}  // namespace detail

/// Integral of f over [a, b]; a > b gives the negated integral.
template <class F>
double integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, spec);
  const GaussLegendreRule& rule = gauss_legendre_rule(spec.points);
  const double whole = detail::gauss_panel(f, a, b, rule);
  const double tol = std::max(spec.rel_tol * std::abs(whole), spec.abs_tol);
  return detail::adapt(f, a, b, whole, tol, spec.max_depth, rule);
}

/// Integral over [cuts.front(), cuts.back()], split at every interior cut so
/// that each panel sees a smooth integrand. Cuts must be sorted.
template <class F>
double integrate_pieces(const F& f, std::span<const double> cuts, const QuadratureSpec& spec = {}) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += integrate(f, cuts[i], cuts[i + 1], spec);
  }
  return sum;
}

}  // namespace cylcap
