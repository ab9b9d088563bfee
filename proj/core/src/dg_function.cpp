#include "ldgs/dg_function.hpp"

#include <array>

#include "ldgs/basis_quadrature.hpp"
#include "ldgs/errors.hpp"

namespace ldgs {

namespace {
constexpr int kMaxModes = 16;
}

DGFunction1D::DGFunction1D(int cells, int degree)
    : cells_(cells), degree_(degree),
      coeffs_(static_cast<std::size_t>(cells) * static_cast<std::size_t>(degree + 1), 0.0) {
  if (cells < 1) throw ConfigError("DGFunction1D: need at least one cell");
  if (degree < 0 || degree + 1 > kMaxModes) throw ConfigError("DGFunction1D: degree out of range");
}

double DGFunction1D::value_ref(int c, double t) const {
  std::array<double, kMaxModes> p{};
  legendre_values(degree_, t, p);
  double s = 0.0;
  for (int n = 0; n <= degree_; ++n) s += coeff(c, n) * p[static_cast<std::size_t>(n)];
  return s;
}

double DGFunction1D::derivative_ref(int c, double t) const {
  double s = 0.0;
  for (int n = 1; n <= degree_; ++n) s += coeff(c, n) * legendre_eval(n, t).derivative;
  return s;
}

double DGFunction1D::right_trace(int c) const {
  double s = 0.0;
  for (int n = 0; n <= degree_; ++n) s += coeff(c, n);
  return s;
}

double DGFunction1D::left_trace(int c) const {
  double s = 0.0;
  for (int n = 0; n <= degree_; ++n) s += ReferenceBasis::left_value(n) * coeff(c, n);
  return s;
}

double DGFunction1D::eval(const Mesh1D& mesh, double x) const {
  const int c = mesh.locate(x);
  return value_ref(c, mesh.cell(c).to_reference(x));
}

double DGFunction1D::jump(int node) const {
  if (node < 0 || node > cells_) throw MeshError("DGFunction1D::jump: node out of range");
  if (node == 0) return -left_trace(0);
  if (node == cells_) return right_trace(cells_ - 1);
  return right_trace(node - 1) - left_trace(node);
}

DGFunction2D::DGFunction2D(int cells_per_axis, int degree)
    : cells_(cells_per_axis), degree_(degree),
      coeffs_(static_cast<std::size_t>(cells_per_axis) * static_cast<std::size_t>(cells_per_axis) *
                  static_cast<std::size_t>((degree + 1) * (degree + 1)),
              0.0) {
  if (cells_per_axis < 1) throw ConfigError("DGFunction2D: need at least one cell");
  if (degree < 0 || degree + 1 > kMaxModes) throw ConfigError("DGFunction2D: degree out of range");
}

double DGFunction2D::value_ref(int cx, int cy, double tx, double ty) const {
  std::array<double, kMaxModes> px{};
  std::array<double, kMaxModes> py{};
  legendre_values(degree_, tx, px);
  legendre_values(degree_, ty, py);
  double s = 0.0;
  for (int m = 0; m <= degree_; ++m) {
    double row = 0.0;
    for (int n = 0; n <= degree_; ++n) row += coeff(cx, cy, m, n) * py[static_cast<std::size_t>(n)];
    s += px[static_cast<std::size_t>(m)] * row;
  }
  return s;
}

namespace {

void legendre_derivatives(int k, double t, std::array<double, kMaxModes>& out) {
  for (int n = 0; n <= k; ++n) out[static_cast<std::size_t>(n)] = legendre_eval(n, t).derivative;
}

}  // namespace

double DGFunction2D::dx_ref(int cx, int cy, double tx, double ty) const {
  std::array<double, kMaxModes> dx{};
  std::array<double, kMaxModes> py{};
  legendre_derivatives(degree_, tx, dx);
  legendre_values(degree_, ty, py);
  double s = 0.0;
  for (int m = 1; m <= degree_; ++m) {
    double row = 0.0;
    for (int n = 0; n <= degree_; ++n) row += coeff(cx, cy, m, n) * py[static_cast<std::size_t>(n)];
    s += dx[static_cast<std::size_t>(m)] * row;
  }
  return s;
}

double DGFunction2D::dy_ref(int cx, int cy, double tx, double ty) const {
  std::array<double, kMaxModes> px{};
  std::array<double, kMaxModes> dy{};
  legendre_values(degree_, tx, px);
  legendre_derivatives(degree_, ty, dy);
  double s = 0.0;
  for (int m = 0; m <= degree_; ++m) {
    double row = 0.0;
    for (int n = 1; n <= degree_; ++n) row += coeff(cx, cy, m, n) * dy[static_cast<std::size_t>(n)];
    s += px[static_cast<std::size_t>(m)] * row;
  }
  return s;
}

double DGFunction2D::eval(const Mesh2D& mesh, double x, double y) const {
  const int cx = mesh.x().locate(x);
  const int cy = mesh.y().locate(y);
  return value_ref(cx, cy, mesh.x().cell(cx).to_reference(x), mesh.y().cell(cy).to_reference(y));
}

}  // namespace ldgs
