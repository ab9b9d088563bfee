#include "ldgs/projections.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ldgs/errors.hpp"

namespace ldgs {

std::string to_string(ProjectionKind kind) {
  switch (kind) {
    case ProjectionKind::l2: return "l2";
    case ProjectionKind::weighted: return "weighted";
    case ProjectionKind::gr_minus: return "gr_minus";
    case ProjectionKind::gr_plus: return "gr_plus";
  }
  return "unknown";
}

namespace {

int moment_points(const ProjectionOptions& opt, int k) {
  return opt.moment_points > 0 ? opt.moment_points : error_points(k);
}

int gram_points(const ProjectionOptions& opt, int k) {
  return opt.gram_points > 0 ? opt.gram_points : assembly_points(k);
}

void check_degree(int k) {
  if (k < 1) throw ConfigError("projection: degree must be >= 1");
}

std::vector<double> apply(const LinearProjector& proj, const Fn1& w, const CellMap& cell) {
  const std::size_t np = proj.points.size();
  std::vector<double> samples(np);
  for (std::size_t q = 0; q < np; ++q) samples[q] = w(cell.to_physical(proj.points[q]));
  std::vector<double> c(static_cast<std::size_t>(proj.degree + 1), 0.0);
  for (int m = 0; m <= proj.degree; ++m) {
    double s = 0.0;
    for (std::size_t q = 0; q < np; ++q) s += proj.weight(m, q) * samples[q];
    c[static_cast<std::size_t>(m)] = s;
  }
  return c;
}

}  // namespace

LinearProjector make_projector(ProjectionKind kind, int k, int npts) {
  check_degree(k);
  if (kind == ProjectionKind::weighted) {
    throw ConfigError("make_projector: the weighted projection has no weight-free functional form");
  }
  const QuadratureRule& rule = gauss_rule(npts);
  LinearProjector proj{kind, k, rule.points, {}};
  const bool gr = kind != ProjectionKind::l2;
  const double end = kind == ProjectionKind::gr_minus ? 1.0 : -1.0;
  if (gr) proj.points.push_back(end);
  const std::size_t np = proj.points.size();
  proj.weights.assign(static_cast<std::size_t>(k + 1) * np, 0.0);
  auto at = [&](int m, std::size_t q) -> double& { return proj.weights[static_cast<std::size_t>(m) * np + q]; };

  std::vector<double> p(static_cast<std::size_t>(k + 1));
  const int moment_modes = gr ? k : k + 1;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    legendre_values(k, rule.points[q], p);
    for (int m = 0; m < moment_modes; ++m) {
      at(m, q) = rule.weights[q] * p[static_cast<std::size_t>(m)] / ReferenceBasis::mass(m);
    }
  }
  if (gr) {
    // Endpoint row: c_k P_k(end) = w(end) - sum_{n<k} c_n P_n(end).
    const double pk_end = kind == ProjectionKind::gr_minus ? 1.0 : ReferenceBasis::left_value(k);
    for (std::size_t q = 0; q < np; ++q) {
      double s = 0.0;
      for (int n = 0; n < k; ++n) {
        const double pn_end = kind == ProjectionKind::gr_minus ? 1.0 : ReferenceBasis::left_value(n);
        s += pn_end * at(n, q);
      }
      at(k, q) = -s / pk_end;
    }
    at(k, np - 1) += 1.0 / pk_end;
  }
  return proj;
}

std::vector<double> project_l2(const Fn1& w, const CellMap& cell, int k, const ProjectionOptions& opt) {
  return apply(make_projector(ProjectionKind::l2, k, moment_points(opt, k)), w, cell);
}

std::vector<double> project_gr_minus(const Fn1& w, const CellMap& cell, int k, const ProjectionOptions& opt) {
  return apply(make_projector(ProjectionKind::gr_minus, k, moment_points(opt, k)), w, cell);
}

std::vector<double> project_gr_plus(const Fn1& w, const CellMap& cell, int k, const ProjectionOptions& opt) {
  return apply(make_projector(ProjectionKind::gr_plus, k, moment_points(opt, k)), w, cell);
}

std::vector<double> project_weighted(const Fn1& w, const Fn1& b, const CellMap& cell, int k,
                                     const ProjectionOptions& opt) {
  check_degree(k);
  const int nm = k + 1;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nm, nm);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nm);
  std::vector<double> p(static_cast<std::size_t>(nm));

  const QuadratureRule& gr = gauss_rule(gram_points(opt, k));
  for (std::size_t q = 0; q < gr.size(); ++q) {
    legendre_values(k, gr.points[q], p);
    const double bw = gr.weights[q] * b(cell.to_physical(gr.points[q]));
    for (int m = 0; m < nm; ++m) {
      for (int n = 0; n < nm; ++n) gram(m, n) += bw * p[static_cast<std::size_t>(m)] * p[static_cast<std::size_t>(n)];
    }
  }
  const QuadratureRule& mr = gauss_rule(moment_points(opt, k));
  for (std::size_t q = 0; q < mr.size(); ++q) {
    legendre_values(k, mr.points[q], p);
    const double x = cell.to_physical(mr.points[q]);
    const double bw = mr.weights[q] * b(x) * w(x);
    for (int m = 0; m < nm; ++m) rhs(m) += bw * p[static_cast<std::size_t>(m)];
  }
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw ProjectionError("project_weighted: weighted Gram matrix is not positive definite");
  }
  const Eigen::VectorXd c = llt.solve(rhs);
  if (!c.allFinite()) throw ProjectionError("project_weighted: non-finite coefficients");
  return {c.data(), c.data() + nm};
}

std::vector<double> project_1d(ProjectionKind kind, const Fn1& w, const CellMap& cell, int k, const Fn1* weight,
                               const ProjectionOptions& opt) {
  switch (kind) {
    case ProjectionKind::l2: return project_l2(w, cell, k, opt);
    case ProjectionKind::gr_minus: return project_gr_minus(w, cell, k, opt);
    case ProjectionKind::gr_plus: return project_gr_plus(w, cell, k, opt);
    case ProjectionKind::weighted:
      if (weight == nullptr) throw ConfigError("project_1d: weighted projection needs a weight");
      return project_weighted(w, *weight, cell, k, opt);
  }
  throw ConfigError("project_1d: unknown kind");
}

ProjectionKind composite_minus_kind_1d(int i, int n) {
  if (i < 1 || i > n) throw MeshError("composite_minus_kind_1d: cell index out of range");
  return (i <= n / 4 || i > 3 * n / 4) ? ProjectionKind::gr_minus : ProjectionKind::weighted;
}

ProjectionKind composite_plus_kind_1d(int i, int n) {
  if (i < 1 || i > n) throw MeshError("composite_plus_kind_1d: cell index out of range");
  return i == 1 ? ProjectionKind::l2 : ProjectionKind::gr_plus;
}

DGFunction1D composite_P_minus_1d(const Fn1& u, const Fn1& b, const Mesh1D& mesh, int k,
                                  const ProjectionOptions& opt) {
  const int n = mesh.cells();
  DGFunction1D out(n, k);
  for (int c = 0; c < n; ++c) {
    const auto coeffs = project_1d(composite_minus_kind_1d(c + 1, n), u, mesh.cell(c), k, &b, opt);
    std::copy(coeffs.begin(), coeffs.end(), out.cell_coeffs(c).begin());
  }
  return out;
}

DGFunction1D composite_P_plus_1d(const Fn1& q, const Mesh1D& mesh, int k, const ProjectionOptions& opt) {
  const int n = mesh.cells();
  DGFunction1D out(n, k);
  for (int c = 0; c < n; ++c) {
    const auto coeffs = project_1d(composite_plus_kind_1d(c + 1, n), q, mesh.cell(c), k, nullptr, opt);
    std::copy(coeffs.begin(), coeffs.end(), out.cell_coeffs(c).begin());
  }
  return out;
}

namespace {

std::vector<double> weighted_project_2d(const Fn2& z, const Fn2& b, const CellMap& cx, const CellMap& cy, int k,
                                        const ProjectionOptions& opt) {
  const int nm = k + 1;
  const int nloc = nm * nm;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nloc, nloc);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nloc);
  std::vector<double> px(static_cast<std::size_t>(nm));
  std::vector<double> py(static_cast<std::size_t>(nm));
  std::vector<double> phi(static_cast<std::size_t>(nloc));

  auto fill_phi = [&](double tx, double ty) {
    legendre_values(k, tx, px);
    legendre_values(k, ty, py);
    for (int m = 0; m < nm; ++m) {
      for (int n = 0; n < nm; ++n) {
        phi[static_cast<std::size_t>(m * nm + n)] = px[static_cast<std::size_t>(m)] * py[static_cast<std::size_t>(n)];
      }
    }
  };

  const QuadratureRule& gr = gauss_rule(gram_points(opt, k));
  for (std::size_t a = 0; a < gr.size(); ++a) {
    for (std::size_t c = 0; c < gr.size(); ++c) {
      fill_phi(gr.points[a], gr.points[c]);
      const double bw = gr.weights[a] * gr.weights[c] *
                        b(cx.to_physical(gr.points[a]), cy.to_physical(gr.points[c]));
      for (int r = 0; r < nloc; ++r) {
        for (int s = 0; s < nloc; ++s) {
          gram(r, s) += bw * phi[static_cast<std::size_t>(r)] * phi[static_cast<std::size_t>(s)];
        }
      }
    }
  }
  const QuadratureRule& mr = gauss_rule(moment_points(opt, k));
  for (std::size_t a = 0; a < mr.size(); ++a) {
    for (std::size_t c = 0; c < mr.size(); ++c) {
      fill_phi(mr.points[a], mr.points[c]);
      const double x = cx.to_physical(mr.points[a]);
      const double y = cy.to_physical(mr.points[c]);
      const double bw = mr.weights[a] * mr.weights[c] * b(x, y) * z(x, y);
      for (int r = 0; r < nloc; ++r) rhs(r) += bw * phi[static_cast<std::size_t>(r)];
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw ProjectionError("tensor_project_2d: weighted Gram matrix is not positive definite");
  }
  const Eigen::VectorXd coeffs = llt.solve(rhs);
  if (!coeffs.allFinite()) throw ProjectionError("tensor_project_2d: non-finite coefficients");
  return {coeffs.data(), coeffs.data() + nloc};
}

}  // namespace

std::vector<double> tensor_project_2d(ProjectionKind kind_x, ProjectionKind kind_y, const Fn2& z, const CellMap& cx,
                                      const CellMap& cy, int k, const Fn2* weight, const ProjectionOptions& opt) {
  check_degree(k);
  const bool wx = kind_x == ProjectionKind::weighted;
  const bool wy = kind_y == ProjectionKind::weighted;
  if (wx || wy) {
    if (!(wx && wy) || weight == nullptr) {
      throw ConfigError("tensor_project_2d: the weighted projection is two-dimensional; pass weighted for both axes and a weight");
    }
    return weighted_project_2d(z, *weight, cx, cy, k, opt);
  }
  const int npts = moment_points(opt, k);
  const LinearProjector px = make_projector(kind_x, k, npts);
  const LinearProjector py = make_projector(kind_y, k, npts);
  const std::size_t nx = px.points.size();
  const std::size_t ny = py.points.size();

  std::vector<double> samples(nx * ny);
  for (std::size_t a = 0; a < nx; ++a) {
    const double x = cx.to_physical(px.points[a]);
    for (std::size_t c = 0; c < ny; ++c) samples[a * ny + c] = z(x, cy.to_physical(py.points[c]));
  }
  const int nm = k + 1;
  // Contract y first: tmp(a, n) = sum_c Wy(n, c) z(a, c).
  std::vector<double> tmp(nx * static_cast<std::size_t>(nm), 0.0);
  for (std::size_t a = 0; a < nx; ++a) {
    for (int n = 0; n < nm; ++n) {
      double s = 0.0;
      for (std::size_t c = 0; c < ny; ++c) s += py.weight(n, c) * samples[a * ny + c];
      tmp[a * static_cast<std::size_t>(nm) + static_cast<std::size_t>(n)] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(nm * nm), 0.0);
  for (int m = 0; m < nm; ++m) {
    for (int n = 0; n < nm; ++n) {
      double s = 0.0;
      for (std::size_t a = 0; a < nx; ++a) s += px.weight(m, a) * tmp[a * static_cast<std::size_t>(nm) + static_cast<std::size_t>(n)];
      out[static_cast<std::size_t>(m * nm + n)] = s;
    }
  }
  return out;
}

KindPair composite_kind_2d(Composite2D which, int i, int j, int n) {
  if (i < 1 || i > n || j < 1 || j > n) throw MeshError("composite_kind_2d: cell index out of range");
  using K = ProjectionKind;
  switch (which) {
    case Composite2D::u_minus: {
      // Strips as listed: i (resp. j) in {1..N/4} U {3N/4+1..N-1}; the last
      // column/row i = N (j = N) is not in the list and falls back to Pi_b.
      auto in_layer = [n](int s) { return s <= n / 4 || (s > 3 * n / 4 && s <= n - 1); };
      auto in_mid = [n](int s) { return s > n / 4 && s <= 3 * n / 4; };
      if (in_layer(i) && in_mid(j)) return {K::gr_minus, K::l2};
      if (in_mid(i) && in_layer(j)) return {K::l2, K::gr_minus};
      return {K::weighted, K::weighted};
    }
    case Composite2D::p_plus_x:
      return i == 1 ? KindPair{K::l2, K::l2} : KindPair{K::gr_plus, K::l2};
    case Composite2D::q_plus_y:
      return j == 1 ? KindPair{K::l2, K::l2} : KindPair{K::l2, K::gr_plus};
  }
  throw ConfigError("composite_kind_2d: unknown projection");
}

DGFunction2D composite_P_2d(Composite2D which, const Fn2& z, const Fn2& b, const Mesh2D& mesh, int k,
                            const ProjectionOptions& opt) {
  const int n = mesh.cells_per_axis();
  DGFunction2D out(n, k);
  for (int cy = 0; cy < n; ++cy) {
    for (int cx = 0; cx < n; ++cx) {
      const KindPair kinds = composite_kind_2d(which, cx + 1, cy + 1, n);
      const auto coeffs = tensor_project_2d(kinds.x, kinds.y, z, mesh.x().cell(cx), mesh.y().cell(cy), k, &b, opt);
      std::copy(coeffs.begin(), coeffs.end(), out.cell_coeffs(cx, cy).begin());
    }
  }
  return out;
}

}  // namespace ldgs
