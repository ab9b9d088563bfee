#include "ldgs/ldg2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ldgs/basis_quadrature.hpp"
#include "ldgs/errors.hpp"

namespace ldgs {

FluxParams2D FluxParams2D::standard(double eps, int cells) {
  const double s = std::sqrt(eps);
  return {s, 1.0 / s, 1.0 / s, 3 * cells / 4};
}

std::size_t dof_2d(int cells, int k, int cx, int cy, Field2D field, int m, int n) {
  const auto k1 = static_cast<std::size_t>(k + 1);
  const auto cell = static_cast<std::size_t>(cy) * static_cast<std::size_t>(cells) + static_cast<std::size_t>(cx);
  return ((cell * 3 + static_cast<std::size_t>(field)) * k1 + static_cast<std::size_t>(m)) * k1 +
         static_cast<std::size_t>(n);
}

namespace {

void check_inputs(const Mesh2D& mesh, int k) {
  const int n = mesh.cells_per_axis();
  if (k < 1 || k > kMaxDegree2D) throw ConfigError("LDG 2D: degree must be 1 or 2");
  if (n < 4 || n % 4 != 0) throw ConfigError("LDG 2D: N must be a positive multiple of 4");
  if (n > kMaxCells2D) throw ConfigError("LDG 2D: N above " + std::to_string(kMaxCells2D));
}

int points_or_default(int quad_points, int k) { return quad_points > 0 ? quad_points : assembly_points(k); }

// Direction d = 0 (x) or 1 (y). "along" indexes cells/modes in direction d,
// "across" the transverse one.
struct Direction {
  int d;
  int cells;
  int k;

  [[nodiscard]] std::size_t dof(int along, int across, Field2D f, int a, int n) const {
    return d == 0 ? dof_2d(cells, k, along, across, f, a, n) : dof_2d(cells, k, across, along, f, n, a);
  }
  [[nodiscard]] Field2D flux_field() const { return d == 0 ? Field2D::P : Field2D::Q; }
};

}  // namespace

AssembledSystem assemble_2d(const Problem2D& problem, const Mesh2D& mesh, int k, int quad_points) {
  check_inputs(mesh, k);
  const int n = mesh.cells_per_axis();
  const int nm = k + 1;
  const double eps = problem.eps;
  const double s = std::sqrt(eps);
  const FluxParams2D flux = FluxParams2D::standard(eps, n);
  const ReferenceBasis basis(k);
  const Mesh1D& m1 = mesh.x();

  AssembledSystem sys;
  sys.cells = n;
  sys.degree = k;
  sys.q_scale = s;
  sys.fields = 3;
  const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * 3 *
                          static_cast<std::size_t>(nm * nm);
  sys.rhs.assign(dim, 0.0);
  std::vector<Triplet> trips;
  trips.reserve(dim * static_cast<std::size_t>(6 * nm));
  auto add = [&](std::size_t r, std::size_t c, double v) {
    if (v != 0.0) trips.push_back({r, c, v});
  };
  auto sgn = [](int a) { return ReferenceBasis::left_value(a); };

  for (int d = 0; d < 2; ++d) {
    const Direction dir{d, n, k};
    const Field2D F = dir.flux_field();
    const double lambda_interface = d == 0 ? flux.lambda_P : flux.lambda_Q;

    // coef * <Uhat on the edge line at node j, P_n> for transverse cell t;
    // coef already carries the edge Jacobian and mass(n).
    auto add_uhat = [&](std::size_t row, int j, int t, int mode, double coef) {
      if (j == 0 || j == n) return;
      for (int a = 0; a < nm; ++a) add(row, dir.dof(j - 1, t, Field2D::U, a, mode), coef);
      if (j == flux.interface_node) {
        const double lq = -coef * lambda_interface * s;
        for (int a = 0; a < nm; ++a) {
          add(row, dir.dof(j - 1, t, F, a, mode), lq);
          add(row, dir.dof(j, t, F, a, mode), -lq * sgn(a));
        }
      }
    };
    auto add_fhat = [&](std::size_t row, int j, int t, int mode, double coef) {
      if (j == 0) {
        for (int a = 0; a < nm; ++a) {
          add(row, dir.dof(0, t, F, a, mode), coef * s * sgn(a));
          add(row, dir.dof(0, t, Field2D::U, a, mode), coef * flux.lambda_boundary * sgn(a));
        }
      } else if (j == n) {
        for (int a = 0; a < nm; ++a) {
          add(row, dir.dof(n - 1, t, F, a, mode), coef * s);
          add(row, dir.dof(n - 1, t, Field2D::U, a, mode), -coef * flux.lambda_boundary);
        }
      } else {
        for (int a = 0; a < nm; ++a) add(row, dir.dof(j, t, F, a, mode), coef * s * sgn(a));
      }
    };

    for (int t = 0; t < n; ++t) {
      const double jt = m1.cell(t).jacobian();
      for (int i = 0; i < n; ++i) {
        const double jd = m1.cell(i).jacobian();
        for (int m = 0; m < nm; ++m) {
          for (int mode = 0; mode < nm; ++mode) {
            const double edge = jt * ReferenceBasis::mass(mode);
            const std::size_t row_f = dir.dof(i, t, F, m, mode);
            add(row_f, row_f, jd * ReferenceBasis::mass(m) * edge);
            for (int a = 0; a < nm; ++a) add(row_f, dir.dof(i, t, Field2D::U, a, mode), s * basis.stiffness(a, m) * edge);
            add_uhat(row_f, i + 1, t, mode, -s * edge);
            add_uhat(row_f, i, t, mode, s * sgn(m) * edge);

            const std::size_t row_u = dir.dof(i, t, Field2D::U, m, mode);
            for (int a = 0; a < nm; ++a) add(row_u, dir.dof(i, t, F, a, mode), s * basis.stiffness(a, m) * edge);
            add_fhat(row_u, i + 1, t, mode, -edge);
            add_fhat(row_u, i, t, mode, sgn(m) * edge);
          }
        }
      }
    }
  }

  // (b U, v) and (f, v).
  const QuadratureRule& rule = gauss_rule(points_or_default(quad_points, k));
  const std::size_t nq = rule.size();
  std::vector<double> pv(nq * static_cast<std::size_t>(nm));
  for (std::size_t q = 0; q < nq; ++q) {
    legendre_values(k, rule.points[q], std::span<double>(pv.data() + q * static_cast<std::size_t>(nm), static_cast<std::size_t>(nm)));
  }
  auto P = [&](std::size_t q, int a) { return pv[q * static_cast<std::size_t>(nm) + static_cast<std::size_t>(a)]; };
  const int loc = nm * nm;
  std::vector<double> bm(static_cast<std::size_t>(loc * loc));
  std::vector<double> fm(static_cast<std::size_t>(loc));
  for (int cy = 0; cy < n; ++cy) {
    const CellMap ycell = m1.cell(cy);
    for (int cx = 0; cx < n; ++cx) {
      const CellMap xcell = m1.cell(cx);
      const double jac = xcell.jacobian() * ycell.jacobian();
      std::fill(bm.begin(), bm.end(), 0.0);
      std::fill(fm.begin(), fm.end(), 0.0);
      for (std::size_t qx = 0; qx < nq; ++qx) {
        const double x = xcell.to_physical(rule.points[qx]);
        for (std::size_t qy = 0; qy < nq; ++qy) {
          const double y = ycell.to_physical(rule.points[qy]);
          const double w = rule.weights[qx] * rule.weights[qy] * jac;
          const double wb = w * problem.b(x, y);
          const double wf = w * problem.f(x, y);
          for (int r = 0; r < loc; ++r) {
            const double phi_r = P(qx, r / nm) * P(qy, r % nm);
            fm[static_cast<std::size_t>(r)] += wf * phi_r;
            for (int c = 0; c < loc; ++c) {
              bm[static_cast<std::size_t>(r * loc + c)] += wb * phi_r * P(qx, c / nm) * P(qy, c % nm);
            }
          }
        }
      }
      for (int r = 0; r < loc; ++r) {
        const std::size_t row = dof_2d(n, k, cx, cy, Field2D::U, r / nm, r % nm);
        sys.rhs[row] = fm[static_cast<std::size_t>(r)];
        for (int c = 0; c < loc; ++c) {
          add(row, dof_2d(n, k, cx, cy, Field2D::U, c / nm, c % nm), bm[static_cast<std::size_t>(r * loc + c)]);
        }
      }
    }
  }

  sys.matrix = SparseMatrix::from_triplets(dim, dim, std::move(trips));
  sys.lower_bandwidth = sys.matrix.lower_bandwidth();
  sys.upper_bandwidth = sys.matrix.upper_bandwidth();
  return sys;
}

MixedSolution2D unpack_2d(const AssembledSystem& sys, const std::vector<double>& x) {
  const int n = sys.cells;
  const int k = sys.degree;
  MixedSolution2D w{DGFunction2D(n, k), DGFunction2D(n, k), DGFunction2D(n, k), 0.0};
  for (int cy = 0; cy < n; ++cy) {
    for (int cx = 0; cx < n; ++cx) {
      for (int m = 0; m <= k; ++m) {
        for (int j = 0; j <= k; ++j) {
          w.P.coeff(cx, cy, m, j) = sys.q_scale * x[dof_2d(n, k, cx, cy, Field2D::P, m, j)];
          w.Q.coeff(cx, cy, m, j) = sys.q_scale * x[dof_2d(n, k, cx, cy, Field2D::Q, m, j)];
          w.U.coeff(cx, cy, m, j) = x[dof_2d(n, k, cx, cy, Field2D::U, m, j)];
        }
      }
    }
  }
  return w;
}

MixedSolution2D solve_ldg_2d(const Problem2D& problem, const Mesh2D& mesh, int k, const SolverOptions& opt) {
  check_inputs(mesh, k);
  if (opt.kind == SolverKind::banded && mesh.cells_per_axis() > kMaxBandedCells2D) {
    throw ConfigError("solve_ldg_2d: banded factorization limited to N <= " + std::to_string(kMaxBandedCells2D));
  }
  const AssembledSystem sys = assemble_2d(problem, mesh, k, opt.quad_points);
  const double tol = opt.max_residual > 0.0 ? opt.max_residual : 1e-9;

  SolveResult res;
  if (opt.kind == SolverKind::banded) {
    res = banded_solve(sys.matrix, sys.rhs);
  } else {
    const int n = sys.cells;
    const int k1 = k + 1;
    std::vector<char> aux(sys.dimension(), 0);
    for (int cell = 0; cell < n * n; ++cell) {
      const std::size_t base = static_cast<std::size_t>(cell) * 3 * static_cast<std::size_t>(k1 * k1);
      std::fill_n(aux.begin() + static_cast<std::ptrdiff_t>(base), 2 * k1 * k1, 1);
    }
    res = condensed_solve(sys.matrix, sys.rhs, aux);
  }
  if (!(res.residual <= tol)) {
    throw NumericalError("solve_ldg_2d: residual " + std::to_string(res.residual) + " above tolerance", res.residual);
  }
  MixedSolution2D w = unpack_2d(sys, res.x);
  w.residual = res.residual;
  return w;
}

namespace {

// Traces of a 2D DG function on the vertical line x = x_i (node i) over
// transverse cell t, at reference point ty: minus side (cell i-1, tx = 1),
// plus side (cell i, tx = -1). Missing sides are zero.
struct Traces {
  double minus;
  double plus;
  [[nodiscard]] double jump() const { return minus - plus; }
};

Traces traces(const DGFunction2D& f, int d, int node, int t, double tt) {
  const int n = f.cells_per_axis();
  Traces out{0.0, 0.0};
  if (node > 0) out.minus = d == 0 ? f.value_ref(node - 1, t, 1.0, tt) : f.value_ref(t, node - 1, tt, 1.0);
  if (node < n) out.plus = d == 0 ? f.value_ref(node, t, -1.0, tt) : f.value_ref(t, node, tt, -1.0);
  return out;
}

}  // namespace

double apply_B_2d(const MixedSolution2D& T, const MixedSolution2D& Z, const Problem2D& problem, const Mesh2D& mesh,
                  int quad_points) {
  const int n = mesh.cells_per_axis();
  const int k = std::max(T.U.degree(), Z.U.degree());
  const double eps = problem.eps;
  const FluxParams2D flux = FluxParams2D::standard(eps, n);
  const QuadratureRule& rule = gauss_rule(points_or_default(quad_points, k));
  const Mesh1D& m1 = mesh.x();

  double volume = 0.0;
  for (int cy = 0; cy < n; ++cy) {
    const CellMap yc = m1.cell(cy);
    for (int cx = 0; cx < n; ++cx) {
      const CellMap xc = m1.cell(cx);
      const double jx = xc.jacobian();
      const double jy = yc.jacobian();
      for (std::size_t qx = 0; qx < rule.size(); ++qx) {
        const double tx = rule.points[qx];
        for (std::size_t qy = 0; qy < rule.size(); ++qy) {
          const double ty = rule.points[qy];
          const double w = rule.weights[qx] * rule.weights[qy] * jx * jy;
          const double U = T.U.value_ref(cx, cy, tx, ty);
          const double P = T.P.value_ref(cx, cy, tx, ty);
          const double Q = T.Q.value_ref(cx, cy, tx, ty);
          const double v = Z.U.value_ref(cx, cy, tx, ty);
          const double sv = Z.P.value_ref(cx, cy, tx, ty);
          const double rv = Z.Q.value_ref(cx, cy, tx, ty);
          const double vx = Z.U.dx_ref(cx, cy, tx, ty) / jx;
          const double vy = Z.U.dy_ref(cx, cy, tx, ty) / jy;
          const double sx = Z.P.dx_ref(cx, cy, tx, ty) / jx;
          const double ry = Z.Q.dy_ref(cx, cy, tx, ty) / jy;
          const double b = problem.b(xc.to_physical(tx), yc.to_physical(ty));
          volume += w * (b * U * v + (P * sv + Q * rv) / eps + U * sx + U * ry + P * vx + Q * vy);
        }
      }
    }
  }

  double edges = 0.0;
  for (int d = 0; d < 2; ++d) {
    const DGFunction2D& F = d == 0 ? T.P : T.Q;     // flux trial
    const DGFunction2D& Fz = d == 0 ? Z.P : Z.Q;    // flux test
    const double lambda_interface = d == 0 ? flux.lambda_P : flux.lambda_Q;
    for (int t = 0; t < n; ++t) {
      const double jt = m1.cell(t).jacobian();
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double tt = rule.points[q];
        const double w = rule.weights[q] * jt;
        for (int i = 0; i <= n; ++i) {
          const Traces u = traces(T.U, d, i, t, tt);
          const Traces v = traces(Z.U, d, i, t, tt);
          const Traces f = traces(F, d, i, t, tt);
          const Traces fz = traces(Fz, d, i, t, tt);
          double e = 0.0;
          if (i > 0 && i < n) e -= u.minus * fz.jump();
          if (i < n) e -= f.plus * v.jump();
          if (i == n) e -= f.minus * v.minus;
          if (i == 0 || i == n) e += flux.lambda_boundary * u.jump() * v.jump();
          if (i == flux.interface_node) e += lambda_interface * f.jump() * fz.jump();
          edges += w * e;
        }
      }
    }
  }
  return volume + edges;
}

double load_2d(const MixedSolution2D& Z, const Problem2D& problem, const Mesh2D& mesh, int quad_points) {
  const int n = mesh.cells_per_axis();
  const QuadratureRule& rule = gauss_rule(points_or_default(quad_points, Z.U.degree()));
  double s = 0.0;
  for (int cy = 0; cy < n; ++cy) {
    const CellMap yc = mesh.y().cell(cy);
    for (int cx = 0; cx < n; ++cx) {
      const CellMap xc = mesh.x().cell(cx);
      for (std::size_t qx = 0; qx < rule.size(); ++qx) {
        for (std::size_t qy = 0; qy < rule.size(); ++qy) {
          const double tx = rule.points[qx];
          const double ty = rule.points[qy];
          s += rule.weights[qx] * rule.weights[qy] * xc.jacobian() * yc.jacobian() *
               problem.f(xc.to_physical(tx), yc.to_physical(ty)) * Z.U.value_ref(cx, cy, tx, ty);
        }
      }
    }
  }
  return s;
}

}  // namespace ldgs
