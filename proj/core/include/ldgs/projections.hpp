#pragma once

// Cell-local projections onto P_k (1D) and Q_k (2D):
//   l2        <pi w - w, v> = 0 for v in P_k
//   weighted  <b (pi_b w - w), v> = 0 for v in P_k
//   gr_minus  moments against P_{k-1}, plus value match at the right end
//   gr_plus   moments against P_{k-1}, plus value match at the left end
// and the region-wise composites used to split the discretization error.

#include <optional>
#include <string>
#include <vector>

#include "ldgs/basis_quadrature.hpp"
#include "ldgs/dg_function.hpp"
#include "ldgs/problems.hpp"
#include "ldgs/shishkin_mesh.hpp"

namespace ldgs {

enum class ProjectionKind { l2, weighted, gr_minus, gr_plus };

std::string to_string(ProjectionKind kind);

struct ProjectionOptions {
  int moment_points = 0;  // 0 -> error_points(k)
  int gram_points = 0;    // 0 -> assembly_points(k)
};

/// A non-weighted 1D projection written as c = W * w(points) on the reference cell.
struct LinearProjector {
  ProjectionKind kind;
  int degree;
  std::vector<double> points;   // reference coordinates
  std::vector<double> weights;  // (degree+1) x points.size(), row-major

  [[nodiscard]] double weight(int mode, std::size_t q) const {
    return weights[static_cast<std::size_t>(mode) * points.size() + q];
  }
};

/// Functional form of l2, gr_minus or gr_plus (ConfigError for weighted).
LinearProjector make_projector(ProjectionKind kind, int k, int moment_points);

std::vector<double> project_l2(const Fn1& w, const CellMap& cell, int k, const ProjectionOptions& opt = {});
/// Throws ProjectionError if the weighted Gram matrix is not positive definite.
std::vector<double> project_weighted(const Fn1& w, const Fn1& b, const CellMap& cell, int k,
                                     const ProjectionOptions& opt = {});
std::vector<double> project_gr_minus(const Fn1& w, const CellMap& cell, int k, const ProjectionOptions& opt = {});
std::vector<double> project_gr_plus(const Fn1& w, const CellMap& cell, int k, const ProjectionOptions& opt = {});

std::vector<double> project_1d(ProjectionKind kind, const Fn1& w, const CellMap& cell, int k,
                               const Fn1* weight = nullptr, const ProjectionOptions& opt = {});

/// Kind used by P_N^- on cell I_i (1-based): gr_minus on the fine cells, weighted on the coarse ones.
ProjectionKind composite_minus_kind_1d(int i, int n);
/// Kind used by P_N^+ on cell I_i (1-based): l2 on I_1, gr_plus elsewhere.
ProjectionKind composite_plus_kind_1d(int i, int n);

DGFunction1D composite_P_minus_1d(const Fn1& u, const Fn1& b, const Mesh1D& mesh, int k,
                                  const ProjectionOptions& opt = {});
DGFunction1D composite_P_plus_1d(const Fn1& q, const Mesh1D& mesh, int k, const ProjectionOptions& opt = {});

/// Tensor-product projection on one rectangle. If either kind is weighted, both
/// must be and `weight` must be given; the result then solves the full Q_k Gram
/// system with weight b(x,y). Coefficients are ordered (m, n), n fastest.
std::vector<double> tensor_project_2d(ProjectionKind kind_x, ProjectionKind kind_y, const Fn2& z,
                                      const CellMap& cx, const CellMap& cy, int k,
                                      const Fn2* weight = nullptr, const ProjectionOptions& opt = {});

enum class Composite2D { u_minus, p_plus_x, q_plus_y };

struct KindPair {
  ProjectionKind x;
  ProjectionKind y;
};

/// Dispatch table on cell (i, j), both 1-based.
KindPair composite_kind_2d(Composite2D which, int i, int j, int n);

/// P^- u (weight b used for the interior weighted projection), P_x^+ p, P_y^+ q.
DGFunction2D composite_P_2d(Composite2D which, const Fn2& z, const Fn2& b, const Mesh2D& mesh, int k,
                            const ProjectionOptions& opt = {});

}  // namespace ldgs
