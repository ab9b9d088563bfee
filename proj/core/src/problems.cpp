#include "ldgs/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ldgs/errors.hpp"

namespace ldgs {

using std::numbers::pi;

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw ConfigError("problem: eps must lie in (0, 1]");
}

}  // namespace

LayerProfile::LayerProfile(double e)
    : eps(e), sqrt_eps(std::sqrt(e)), denom(-std::expm1(-1.0 / std::sqrt(e))) {}

double LayerProfile::layer(double s) const {
  return (std::exp(-s / sqrt_eps) - std::exp(-(1.0 - s) / sqrt_eps)) / denom;
}

double LayerProfile::value(double s) const { return layer(s) - std::cos(pi * s); }

double LayerProfile::d1(double s) const {
  const double dl = (-std::exp(-s / sqrt_eps) - std::exp(-(1.0 - s) / sqrt_eps)) / (sqrt_eps * denom);
  return dl + pi * std::sin(pi * s);
}

double LayerProfile::d2(double s) const {
  return layer(s) / eps + pi * pi * std::cos(pi * s);
}

Problem1D paper_1d_problem(double eps) {
  check_eps(eps);
  const LayerProfile g(eps);
  Problem1D p;
  p.name = "paper1d";
  p.eps = eps;
  p.beta = 1.0;
  p.b = [](double) { return 1.0; };
  p.f = [eps](double x) { return -(1.0 + eps * pi * pi) * std::cos(pi * x); };
  p.u_exact = [g](double x) { return g.value(x); };
  p.du_exact = [g](double x) { return g.d1(x); };
  return p;
}

Problem1D polynomial_problem_1d(double eps, int k) {
  check_eps(eps);
  if (k < 2) throw ConfigError("polynomial_problem_1d: needs k >= 2 to be resolvable");
  Problem1D p;
  p.name = "poly1d";
  p.eps = eps;
  p.beta = 1.0;
  p.b = [](double) { return 1.0; };
  p.f = [eps](double x) { return 2.0 * eps + x * (1.0 - x); };
  p.u_exact = [](double x) { return x * (1.0 - x); };
  p.du_exact = [](double x) { return 1.0 - 2.0 * x; };
  return p;
}

Problem2D manufactured_2d_problem(double eps) {
  check_eps(eps);
  const LayerProfile g(eps);
  Problem2D p;
  p.name = "manufactured2d";
  p.eps = eps;
  p.beta = 1.0;
  p.b = [](double, double) { return 2.0; };
  p.f = [g, eps](double x, double y) {
    const double gx = g.value(x);
    const double gy = g.value(y);
    // eps * g'' = layer + eps pi^2 cos, evaluated without the 1/eps factor.
    const double eps_gxx = g.layer(x) + eps * pi * pi * std::cos(pi * x);
    const double eps_gyy = g.layer(y) + eps * pi * pi * std::cos(pi * y);
    return -(eps_gxx * gy + gx * eps_gyy) + 2.0 * gx * gy;
  };
  p.u_exact = [g](double x, double y) { return g.value(x) * g.value(y); };
  p.ux_exact = [g](double x, double y) { return g.d1(x) * g.value(y); };
  p.uy_exact = [g](double x, double y) { return g.value(x) * g.d1(y); };
  return p;
}

Problem2D polynomial_problem_2d(double eps) {
  check_eps(eps);
  Problem2D p;
  p.name = "poly2d";
  p.eps = eps;
  p.beta = 1.0;
  p.b = [](double, double) { return 2.0; };
  p.f = [eps](double x, double y) {
    const double gx = x * (1.0 - x);
    const double gy = y * (1.0 - y);
    return 2.0 * eps * (gx + gy) + 2.0 * gx * gy;
  };
  p.u_exact = [](double x, double y) { return x * (1.0 - x) * y * (1.0 - y); };
  p.ux_exact = [](double x, double y) { return (1.0 - 2.0 * x) * y * (1.0 - y); };
  p.uy_exact = [](double x, double y) { return x * (1.0 - x) * (1.0 - 2.0 * y); };
  return p;
}

Problem1D zero_problem_1d(double eps) {
  check_eps(eps);
  Problem1D p;
  p.name = "zero1d";
  p.eps = eps;
  p.b = [](double) { return 1.0; };
  p.f = [](double) { return 0.0; };
  p.u_exact = [](double) { return 0.0; };
  p.du_exact = [](double) { return 0.0; };
  return p;
}

Problem2D zero_problem_2d(double eps) {
  check_eps(eps);
  Problem2D p;
  p.name = "zero2d";
  p.eps = eps;
  p.b = [](double, double) { return 2.0; };
  p.f = [](double, double) { return 0.0; };
  p.u_exact = [](double, double) { return 0.0; };
  p.ux_exact = [](double, double) { return 0.0; };
  p.uy_exact = [](double, double) { return 0.0; };
  return p;
}

std::vector<std::string> problem_keys() { return {"paper1d", "poly1d", "manufactured2d", "poly2d"}; }

int problem_dimension(std::string_view key) {
  if (key == "paper1d" || key == "poly1d") return 1;
  if (key == "manufactured2d" || key == "poly2d") return 2;
  throw ConfigError("unknown problem key '" + std::string(key) + "'");
}

Problem1D make_problem_1d(std::string_view key, double eps, int k) {
  if (key == "paper1d") return paper_1d_problem(eps);
  if (key == "poly1d") return polynomial_problem_1d(eps, std::max(k, 2));
  throw ConfigError("no 1D problem named '" + std::string(key) + "'");
}

Problem2D make_problem_2d(std::string_view key, double eps) {
  if (key == "manufactured2d") return manufactured_2d_problem(eps);
  if (key == "poly2d") return polynomial_problem_2d(eps);
  throw ConfigError("no 2D problem named '" + std::string(key) + "'");
}

double sample_min_b(const Problem1D& p, int m) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) lo = std::min(lo, p.b(static_cast<double>(i) / (m - 1)));
  return lo;
}

double sample_min_b(const Problem2D& p, int m) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      lo = std::min(lo, p.b(static_cast<double>(i) / (m - 1), static_cast<double>(j) / (m - 1)));
    }
  }
  return lo;
}

}  // namespace ldgs
