#pragma once

// Reference-element machinery on [-1, 1]: Legendre polynomials, Gauss-Legendre
// rules and the affine map onto a physical cell.

#include <span>
#include <utility>
#include <vector>

namespace ldgs {

struct LegendreValue {
  double value;
  double derivative;
};

/// P_n(x) and P_n'(x) by the three-term recurrence.
LegendreValue legendre_eval(int n, double x);

/// P_0..P_n at x, written into `out` (size n+1).
void legendre_values(int n, double x, std::span<double> out);

struct QuadratureRule {
  std::vector<double> points;   // increasing, symmetric about 0
  std::vector<double> weights;  // positive, sum to 2

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

inline constexpr int kMaxGaussPoints = 64;

/// n-point Gauss-Legendre rule, exact for degree <= 2n-1. Throws ConfigError
/// for n outside [1, 64]. Rules are computed once and cached.
const QuadratureRule& gauss_rule(int n);

/// Default number of points for assembly integrals (b, f smooth).
constexpr int assembly_points(int degree) noexcept { return degree + 3; }
/// Default number of points for error integrals against layer solutions.
constexpr int error_points(int degree) noexcept { return 2 * (degree + 2); }

/// Affine map [-1,1] -> [a,b].
class CellMap {
 public:
  /// Throws MeshError unless a < b.
  CellMap(double a, double b);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double width() const noexcept { return b_ - a_; }
  [[nodiscard]] double jacobian() const noexcept { return 0.5 * (b_ - a_); }
  [[nodiscard]] double to_physical(double t) const noexcept {
    return a_ + (b_ - a_) * (t + 1.0) * 0.5;
  }
  [[nodiscard]] double to_reference(double x) const noexcept {
    return 2.0 * (x - a_) / (b_ - a_) - 1.0;
  }

 private:
  double a_;
  double b_;
};

/// Convenience form of CellMap(a, b).to_physical(t).
double cell_map(double a, double b, double t);

/// Legendre basis P_0..P_k on the reference interval, with the handful of
/// reference integrals every assembly routine needs.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree);

  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] int size() const noexcept { return degree_ + 1; }

  /// <P_n, P_n> on [-1,1] = 2/(2n+1).
  [[nodiscard]] static double mass(int n) noexcept { return 2.0 / (2.0 * n + 1.0); }
  /// P_n(+1) = 1, P_n(-1) = (-1)^n.
  [[nodiscard]] static double right_value(int) noexcept { return 1.0; }
  [[nodiscard]] static double left_value(int n) noexcept { return (n % 2 == 0) ? 1.0 : -1.0; }

  /// D(a, m) = int_{-1}^{1} P_a(t) P_m'(t) dt.
  [[nodiscard]] double stiffness(int a, int m) const noexcept {
    return stiffness_[static_cast<std::size_t>(a * size() + m)];
  }

  void values(double t, std::span<double> out) const;
  void derivatives(double t, std::span<double> out) const;

 private:
  int degree_;
  std::vector<double> stiffness_;
};

}  // namespace ldgs
