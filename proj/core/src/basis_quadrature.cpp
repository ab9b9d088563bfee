#include "ldgs/basis_quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ldgs/errors.hpp"

namespace ldgs {

LegendreValue legendre_eval(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = x;
  double dp_prev = 0.0;
  double dp = 1.0;
  for (int j = 1; j < n; ++j) {
    const double p_next = ((2.0 * j + 1.0) * x * p - j * p_prev) / (j + 1.0);
    // P'_{j+1} = P'_{j-1} + (2j+1) P_j, valid at the endpoints too.
    const double dp_next = dp_prev + (2.0 * j + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

void legendre_values(int n, double x, std::span<double> out) {
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = x;
  for (int j = 1; j < n; ++j) {
    out[static_cast<std::size_t>(j + 1)] =
        ((2.0 * j + 1.0) * x * out[static_cast<std::size_t>(j)] -
         j * out[static_cast<std::size_t>(j - 1)]) /
        (j + 1.0);
  }
}

namespace {

QuadratureRule compute_gauss_rule(int n) {
  QuadratureRule rule;
  rule.points.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    LegendreValue lv{};
    for (int it = 0; it < 100; ++it) {
      lv = legendre_eval(n, x);
      const double dx = lv.value / lv.derivative;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    lv = legendre_eval(n, x);
    const double w = 2.0 / ((1.0 - x * x) * lv.derivative * lv.derivative);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.points[lo] = -x;
    rule.points[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_rule(int n) {
  if (n < 1 || n > kMaxGaussPoints) {
    throw ConfigError("gauss_rule: number of points must be in [1, 64], got " +
                      std::to_string(n));
  }
  static const std::vector<QuadratureRule> table = [] {
    std::vector<QuadratureRule> t;
    t.reserve(kMaxGaussPoints + 1);
    t.emplace_back();
    for (int m = 1; m <= kMaxGaussPoints; ++m) t.push_back(compute_gauss_rule(m));
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

CellMap::CellMap(double a, double b) : a_(a), b_(b) {
  if (!(a < b)) {
    throw MeshError("degenerate cell [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
}

double cell_map(double a, double b, double t) { return CellMap(a, b).to_physical(t); }

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree < 0) throw ConfigError("ReferenceBasis: negative degree");
  const int n = size();
  stiffness_.assign(static_cast<std::size_t>(n * n), 0.0);
  const QuadratureRule& rule = gauss_rule(n);  // integrand degree <= 2k-1
  std::vector<double> pv(static_cast<std::size_t>(n));
  std::vector<double> dv(static_cast<std::size_t>(n));
  for (std::size_t q = 0; q < rule.size(); ++q) {
    values(rule.points[q], pv);
    derivatives(rule.points[q], dv);
    for (int a = 0; a < n; ++a) {
      for (int m = 0; m < n; ++m) {
        stiffness_[static_cast<std::size_t>(a * n + m)] +=
            rule.weights[q] * pv[static_cast<std::size_t>(a)] * dv[static_cast<std::size_t>(m)];
      }
    }
  }
}

void ReferenceBasis::values(double t, std::span<double> out) const {
  legendre_values(degree_, t, out);
}

void ReferenceBasis::derivatives(double t, std::span<double> out) const {
  for (int n = 0; n <= degree_; ++n) out[static_cast<std::size_t>(n)] = legendre_eval(n, t).derivative;
}

}  // namespace ldgs
