#pragma once

// Piecewise-uniform layer-adapted (Shishkin) meshes on [0,1] and [0,1]^2.
//
// N/4 cells of width 4*tau/N sit in each of [0, tau] and [1-tau, 1]; the
// remaining N/2 cells split [tau, 1-tau] evenly, with
//   tau = min(1/4, sigma * sqrt(eps) * ln(N) / beta).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldgs/basis_quadrature.hpp"

namespace ldgs {

struct MeshConfig {
  int cells = 32;       // N, a positive multiple of 4
  double eps = 1e-4;    // perturbation parameter
  double sigma = 2.0;   // transition constant
  double beta = 1.0;    // lower bound constant for b
};

enum class Region { fine_left, coarse, fine_right };

std::string to_string(Region r);

class Mesh1D {
 public:
  Mesh1D(std::vector<double> nodes, double tau, bool clamped);

  [[nodiscard]] int cells() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] double tau() const noexcept { return tau_; }
  [[nodiscard]] bool clamped() const noexcept { return clamped_; }

  /// Width of 0-based cell c = [x_c, x_{c+1}].
  [[nodiscard]] double width(int c) const { return node(c + 1) - node(c); }
  [[nodiscard]] CellMap cell(int c) const { return {node(c), node(c + 1)}; }

  /// Node index of the penalized interface, 3N/4.
  [[nodiscard]] int interface_node() const noexcept { return 3 * cells() / 4; }

  /// 0-based cell containing x (right-continuous; x = 1 maps to the last cell).
  [[nodiscard]] int locate(double x) const;

 private:
  std::vector<double> nodes_;
  double tau_;
  bool clamped_;
};

/// Tensor product of two identical 1D meshes. Cells are (cx, cy), both 0-based.
class Mesh2D {
 public:
  Mesh2D(Mesh1D mx, Mesh1D my);

  [[nodiscard]] const Mesh1D& x() const noexcept { return mx_; }
  [[nodiscard]] const Mesh1D& y() const noexcept { return my_; }
  [[nodiscard]] int cells_per_axis() const noexcept { return mx_.cells(); }
  [[nodiscard]] int cell_count() const noexcept { return mx_.cells() * my_.cells(); }
  [[nodiscard]] bool clamped() const noexcept { return mx_.clamped() || my_.clamped(); }

 private:
  Mesh1D mx_;
  Mesh1D my_;
};

/// tau = min(1/4, sigma*sqrt(eps)*ln N/beta); throws ConfigError on invalid cfg.
double transition_point(const MeshConfig& cfg);

Mesh1D build_shishkin_1d(const MeshConfig& cfg);
Mesh2D build_shishkin_2d(const MeshConfig& cfg);

/// Region of cell I_i with the 1-based numbering i = 1..N of the cell list.
Region region_of(const Mesh1D& mesh, int i);

/// One node per line, 17 significant digits.
void write_mesh(std::ostream& os, const Mesh1D& mesh);

}  // namespace ldgs
