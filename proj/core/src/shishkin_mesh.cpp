#include "ldgs/shishkin_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "ldgs/errors.hpp"

namespace ldgs {

std::string to_string(Region r) {
  switch (r) {
    case Region::fine_left: return "fine_left";
    case Region::coarse: return "coarse";
    case Region::fine_right: return "fine_right";
  }
  return "unknown";
}

Mesh1D::Mesh1D(std::vector<double> nodes, double tau, bool clamped)
    : nodes_(std::move(nodes)), tau_(tau), clamped_(clamped) {
  if (nodes_.size() < 2) throw MeshError("Mesh1D: need at least one cell");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i - 1] < nodes_[i])) throw MeshError("Mesh1D: nodes must be strictly increasing");
  }
}

int Mesh1D::locate(double x) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const auto c = static_cast<int>(it - nodes_.begin()) - 1;
  return std::clamp(c, 0, cells() - 1);
}

Mesh2D::Mesh2D(Mesh1D mx, Mesh1D my) : mx_(std::move(mx)), my_(std::move(my)) {
  if (mx_.cells() != my_.cells()) throw MeshError("Mesh2D: both axes must share N");
}

double transition_point(const MeshConfig& cfg) {
  if (cfg.cells < 4 || cfg.cells % 4 != 0) {
    throw ConfigError("mesh: N must be a positive multiple of 4, got " + std::to_string(cfg.cells));
  }
  if (!(cfg.eps > 0.0) || !(cfg.sigma > 0.0) || !(cfg.beta > 0.0)) {
    throw ConfigError("mesh: eps, sigma and beta must be positive");
  }
  const double t = cfg.sigma * std::sqrt(cfg.eps) * std::log(static_cast<double>(cfg.cells)) / cfg.beta;
  return std::min(0.25, t);
}

Mesh1D build_shishkin_1d(const MeshConfig& cfg) {
  const double tau = transition_point(cfg);
  const bool clamped = tau >= 0.25;
  const int n = cfg.cells;
  const int q1 = n / 4;
  const int q3 = 3 * n / 4;
  std::vector<double> x(static_cast<std::size_t>(n + 1));
  // Each branch evaluated directly from t_i = i/N; the right branch mirrors the
  // left so that x_i + x_{N-i} = 1 holds to roundoff.
  for (int i = 0; i <= n; ++i) {
    double xi;
    if (i <= q1) {
      xi = 4.0 * tau * i / n;
    } else if (i <= q3) {
      xi = tau + 2.0 * (1.0 - 2.0 * tau) * (static_cast<double>(i) / n - 0.25);
    } else {
      xi = 1.0 - 4.0 * tau * (n - i) / n;
    }
    x[static_cast<std::size_t>(i)] = xi;
  }
  x[static_cast<std::size_t>(q1)] = tau;
  x[static_cast<std::size_t>(q3)] = 1.0 - tau;
  x[static_cast<std::size_t>(n / 2)] = 0.5;
  for (int i = q1 + 1; i < n / 2; ++i) {
    x[static_cast<std::size_t>(n - i)] = 1.0 - x[static_cast<std::size_t>(i)];
  }
  x.front() = 0.0;
  x.back() = 1.0;
  return Mesh1D(std::move(x), tau, clamped);
}

Mesh2D build_shishkin_2d(const MeshConfig& cfg) {
  Mesh1D m = build_shishkin_1d(cfg);
  return Mesh2D(m, m);
}

Region region_of(const Mesh1D& mesh, int i) {
  const int n = mesh.cells();
  if (i < 1 || i > n) {
    throw MeshError("region_of: cell index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  }
  if (i <= n / 4) return Region::fine_left;
  if (i <= 3 * n / 4) return Region::coarse;
  return Region::fine_right;
}

void write_mesh(std::ostream& os, const Mesh1D& mesh) {
  const auto old = os.precision(17);
  for (double x : mesh.nodes()) os << x << '\n';
  os.precision(old);
}

}  // namespace ldgs
