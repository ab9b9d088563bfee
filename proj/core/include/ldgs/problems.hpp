#pragma once

// Model problems  -eps u'' + b u = f  on (0,1)  and  -eps Lap u + b u = f  on
// (0,1)^2, homogeneous Dirichlet data, with exact-solution handles where known.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldgs {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct Problem1D {
  std::string name;
  double eps = 1.0;
  double beta = 1.0;  // b >= beta^2
  Fn1 b;
  Fn1 f;
  std::optional<Fn1> u_exact;
  std::optional<Fn1> du_exact;

  [[nodiscard]] bool has_exact() const noexcept { return u_exact.has_value() && du_exact.has_value(); }
  /// q = eps * u'.
  [[nodiscard]] double q_exact(double x) const { return eps * (*du_exact)(x); }
};

struct Problem2D {
  std::string name;
  double eps = 1.0;
  double beta = 1.0;  // b >= 2 beta^2
  Fn2 b;
  Fn2 f;
  std::optional<Fn2> u_exact;
  std::optional<Fn2> ux_exact;
  std::optional<Fn2> uy_exact;

  [[nodiscard]] bool has_exact() const noexcept {
    return u_exact.has_value() && ux_exact.has_value() && uy_exact.has_value();
  }
  [[nodiscard]] double p_exact(double x, double y) const { return eps * (*ux_exact)(x, y); }
  [[nodiscard]] double q_exact(double x, double y) const { return eps * (*uy_exact)(x, y); }
};

/// Two-layer profile vanishing at both ends,
///   g(s) = (e^{-s/sqrt(eps)} - e^{-(1-s)/sqrt(eps)}) / (1 - e^{-1/sqrt(eps)}) - cos(pi s),
/// with its first and second derivatives. The layer part solves -eps v'' + v = 0.
struct LayerProfile {
  explicit LayerProfile(double eps);
  [[nodiscard]] double value(double s) const;
  [[nodiscard]] double d1(double s) const;
  [[nodiscard]] double d2(double s) const;
  /// The exponential part alone (no cosine).
  [[nodiscard]] double layer(double s) const;

  double eps;
  double sqrt_eps;
  double denom;
};

/// b = 1, u = g(x) with g from LayerProfile, f = -(1 + eps pi^2) cos(pi x).
Problem1D paper_1d_problem(double eps);

/// b = 1, u = x(1-x), q = eps(1-2x), f = 2 eps + x(1-x). Lies in the discrete
/// space for k >= 2.
Problem1D polynomial_problem_1d(double eps, int k = 2);

/// b = 2, u = g(x) g(y), f = -eps Lap u + 2u analytically.
Problem2D manufactured_2d_problem(double eps);

/// b = 2, u = x(1-x) y(1-y) (in Q_2).
Problem2D polynomial_problem_2d(double eps);

/// Zero data, for structural tests.
Problem1D zero_problem_1d(double eps);
Problem2D zero_problem_2d(double eps);

/// Keys accepted by the CLI: "paper1d", "poly1d", "manufactured2d", "poly2d".
std::vector<std::string> problem_keys();
int problem_dimension(std::string_view key);
Problem1D make_problem_1d(std::string_view key, double eps, int k);
Problem2D make_problem_2d(std::string_view key, double eps);

/// Minimum of b over an m-point uniform sample of [0,1] (resp. [0,1]^2).
double sample_min_b(const Problem1D& p, int m = 1001);
double sample_min_b(const Problem2D& p, int m = 101);

}  // namespace ldgs
