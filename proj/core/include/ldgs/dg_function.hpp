#pragma once

// Piecewise polynomials in the modal Legendre basis. Coefficients only; the
// owning mesh is passed wherever physical coordinates are needed.

#include <cstddef>
#include <span>
#include <vector>

#include "ldgs/shishkin_mesh.hpp"

namespace ldgs {

class DGFunction1D {
 public:
  DGFunction1D() = default;
  DGFunction1D(int cells, int degree);

  [[nodiscard]] int cells() const noexcept { return cells_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] int modes() const noexcept { return degree_ + 1; }

  [[nodiscard]] double& coeff(int c, int n) { return coeffs_[index(c, n)]; }
  [[nodiscard]] double coeff(int c, int n) const { return coeffs_[index(c, n)]; }
  [[nodiscard]] std::span<double> cell_coeffs(int c) {
    return {coeffs_.data() + index(c, 0), static_cast<std::size_t>(modes())};
  }
  [[nodiscard]] std::span<const double> cell_coeffs(int c) const {
    return {coeffs_.data() + index(c, 0), static_cast<std::size_t>(modes())};
  }
  [[nodiscard]] std::vector<double>& data() noexcept { return coeffs_; }
  [[nodiscard]] const std::vector<double>& data() const noexcept { return coeffs_; }

  /// Value at reference point t in cell c.
  [[nodiscard]] double value_ref(int c, double t) const;
  /// d/dt of the cell polynomial (divide by the Jacobian for d/dx).
  [[nodiscard]] double derivative_ref(int c, double t) const;
  /// Trace at the right end of cell c, i.e. v^-_{c+1}.
  [[nodiscard]] double right_trace(int c) const;
  /// Trace at the left end of cell c, i.e. v^+_c.
  [[nodiscard]] double left_trace(int c) const;

  /// Value at physical x (right-continuous inside the mesh).
  [[nodiscard]] double eval(const Mesh1D& mesh, double x) const;

  /// Jump [[v]]_i at node i (0..N) with [[v]]_0 = -v_0^+ and [[v]]_N = v_N^-.
  [[nodiscard]] double jump(int node) const;

 private:
  [[nodiscard]] std::size_t index(int c, int n) const noexcept {
    return static_cast<std::size_t>(c) * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(n);
  }
  int cells_ = 0;
  int degree_ = 0;
  std::vector<double> coeffs_;
};

/// Q_k piecewise polynomial on a tensor mesh; coefficient (cx, cy, m, n)
/// multiplies P_m(t_x) P_n(t_y).
class DGFunction2D {
 public:
  DGFunction2D() = default;
  DGFunction2D(int cells_per_axis, int degree);

  [[nodiscard]] int cells_per_axis() const noexcept { return cells_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] int modes() const noexcept { return degree_ + 1; }
  [[nodiscard]] int local_size() const noexcept { return modes() * modes(); }

  [[nodiscard]] double& coeff(int cx, int cy, int m, int n) { return coeffs_[index(cx, cy, m, n)]; }
  [[nodiscard]] double coeff(int cx, int cy, int m, int n) const { return coeffs_[index(cx, cy, m, n)]; }
  [[nodiscard]] std::span<double> cell_coeffs(int cx, int cy) {
    return {coeffs_.data() + index(cx, cy, 0, 0), static_cast<std::size_t>(local_size())};
  }
  [[nodiscard]] std::span<const double> cell_coeffs(int cx, int cy) const {
    return {coeffs_.data() + index(cx, cy, 0, 0), static_cast<std::size_t>(local_size())};
  }
  [[nodiscard]] std::vector<double>& data() noexcept { return coeffs_; }
  [[nodiscard]] const std::vector<double>& data() const noexcept { return coeffs_; }

  [[nodiscard]] double value_ref(int cx, int cy, double tx, double ty) const;
  /// Partial derivatives in the reference variables tx, ty.
  [[nodiscard]] double dx_ref(int cx, int cy, double tx, double ty) const;
  [[nodiscard]] double dy_ref(int cx, int cy, double tx, double ty) const;
  [[nodiscard]] double eval(const Mesh2D& mesh, double x, double y) const;

 private:
  [[nodiscard]] std::size_t index(int cx, int cy, int m, int n) const noexcept {
    const auto k1 = static_cast<std::size_t>(degree_ + 1);
    const auto cell = static_cast<std::size_t>(cy) * static_cast<std::size_t>(cells_) + static_cast<std::size_t>(cx);
    return (cell * k1 + static_cast<std::size_t>(m)) * k1 + static_cast<std::size_t>(n);
  }
  int cells_ = 0;
  int degree_ = 0;
  std::vector<double> coeffs_;
};

}  // namespace ldgs
