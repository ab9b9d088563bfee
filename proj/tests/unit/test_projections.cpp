#include <gtest/gtest.h>

#include <boost/rational.hpp>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "ldgs/errors.hpp"
#include "ldgs/norms.hpp"
#include "ldgs/projections.hpp"

namespace ldgs {
namespace {

using Rational = boost::rational<long long>;

double eval_modal(const std::vector<double>& c, const CellMap& cell, double x) {
  const double t = cell.to_reference(x);
  double s = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * legendre_eval(static_cast<int>(n), t).value;
  return s;
}

double eval_modal_2d(const std::vector<double>& c, int k, const CellMap& cx, const CellMap& cy, double x, double y) {
  const double tx = cx.to_reference(x);
  const double ty = cy.to_reference(y);
  double s = 0.0;
  for (int m = 0; m <= k; ++m) {
    for (int n = 0; n <= k; ++n) {
      s += c[static_cast<std::size_t>(m * (k + 1) + n)] * legendre_eval(m, tx).value * legendre_eval(n, ty).value;
    }
  }
  return s;
}

// Exact 2x2 solve; the oracle for the weighted projection of x^2 with
// weight 1+x on [0,1] onto P_1.
std::array<Rational, 2> weighted_oracle() {
  // int_0^1 (1+x) x^j dx = 1/(j+1) + 1/(j+2)
  auto mom = [](int j) { return Rational(1, j + 1) + Rational(1, j + 2); };
  const Rational a00 = mom(0), a01 = mom(1), a10 = mom(1), a11 = mom(2);
  const Rational r0 = mom(2), r1 = mom(3);
  const Rational det = a00 * a11 - a01 * a10;
  return {(r0 * a11 - a01 * r1) / det, (a00 * r1 - a10 * r0) / det};
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

TEST(ProjectL2, ReproducesLinearFunctions) {
  const CellMap cell(0.3, 0.7);
  const auto c = project_l2([](double x) { return x; }, cell, 2);
  for (double x : {0.3, 0.45, 0.7}) EXPECT_NEAR(eval_modal(c, cell, x), x, 1e-14);
}

TEST(ProjectL2, QuadraticOntoLinearsOnUnitCell) {
  const CellMap cell(0.0, 1.0);
  const auto c = project_l2([](double x) { return x * x; }, cell, 1);
  for (double x : {0.0, 0.25, 1.0}) EXPECT_NEAR(eval_modal(c, cell, x), x - 1.0 / 6.0, 1e-14);
}

TEST(ProjectL2, ZeroMapsToZero) {
  const auto c = project_l2([](double) { return 0.0; }, CellMap(0.0, 1.0), 3);
  for (double v : c) EXPECT_EQ(v, 0.0);
}

TEST(ProjectWeighted, UnitWeightCoincidesWithL2) {
  const CellMap cell(0.1, 0.35);
  const Fn1 w = [](double x) { return std::exp(3 * x) * std::sin(5 * x); };
  for (int k = 1; k <= 4; ++k) {
    const auto a = project_l2(w, cell, k);
    const auto b = project_weighted(w, [](double) { return 1.0; }, cell, k);
    for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(a[n], b[n], 1e-13);
  }
}

TEST(ProjectWeighted, MatchesExactRationalOracle) {
  const auto oracle = weighted_oracle();
  EXPECT_EQ(oracle[0], Rational(-5, 26));
  EXPECT_EQ(oracle[1], Rational(68, 65));
  const CellMap cell(0.0, 1.0);
  const auto c = project_weighted([](double x) { return x * x; }, [](double x) { return 1.0 + x; }, cell, 1);
  for (double x : {0.0, 0.5, 1.0}) {
    EXPECT_NEAR(eval_modal(c, cell, x), to_double(oracle[0]) + to_double(oracle[1]) * x, 1e-14);
  }
}

TEST(ProjectWeighted, NonpositiveWeightIsRejected) {
  EXPECT_THROW(project_weighted([](double x) { return x; }, [](double) { return -1.0; }, CellMap(0.0, 1.0), 2),
               ProjectionError);
}

TEST(GaussRadau, MinusOfQuadraticOnUnitCell) {
  const CellMap cell(0.0, 1.0);
  const auto c = project_gr_minus([](double x) { return x * x; }, cell, 1);
  for (double x : {0.0, 0.5, 1.0}) EXPECT_NEAR(eval_modal(c, cell, x), -1.0 / 3.0 + 4.0 * x / 3.0, 1e-14);
}

TEST(GaussRadau, PlusOfQuadraticMatchesLeftEndAndMean) {
  const CellMap cell(0.0, 1.0);
  const auto c = project_gr_plus([](double x) { return x * x; }, cell, 1);
  EXPECT_NEAR(eval_modal(c, cell, 0.0), 0.0, 1e-14);
  // mean of the projection = mean of x^2 = 1/3 (c_0 is the cell mean)
  EXPECT_NEAR(c[0], 1.0 / 3.0, 1e-14);
}

TEST(GaussRadau, EndpointAndMomentConditionsForSmoothData) {
  const Fn1 w = [](double x) { return std::cos(7 * x) + x * x * x * x * x; };
  const CellMap cell(-0.2, 0.9);
  // Moments are taken with the rule the projection itself uses.
  const ProjectionOptions opt{20, 0};
  const QuadratureRule& rule = gauss_rule(20);
  for (int k = 1; k <= 4; ++k) {
    const auto cm = project_gr_minus(w, cell, k, opt);
    const auto cp = project_gr_plus(w, cell, k, opt);
    EXPECT_NEAR(eval_modal(cm, cell, cell.b()), w(cell.b()), 1e-12);
    EXPECT_NEAR(eval_modal(cp, cell, cell.a()), w(cell.a()), 1e-12);
    for (int m = 0; m < k; ++m) {
      double sm = 0.0;
      double sp = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double x = cell.to_physical(rule.points[q]);
        const double pm = legendre_eval(m, rule.points[q]).value;
        sm += rule.weights[q] * (eval_modal(cm, cell, x) - w(x)) * pm;
        sp += rule.weights[q] * (eval_modal(cp, cell, x) - w(x)) * pm;
      }
      EXPECT_NEAR(sm, 0.0, 1e-12) << "k=" << k << " m=" << m;
      EXPECT_NEAR(sp, 0.0, 1e-12) << "k=" << k << " m=" << m;
    }
  }
}

TEST(Projections, EveryKindReproducesItsSpace) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const CellMap cell(0.25, 0.4);
  const Fn1 b = [](double x) { return 2.0 + std::sin(x); };
  for (int k = 1; k <= 5; ++k) {
    std::vector<double> coeffs(static_cast<std::size_t>(k + 1));
    for (double& c : coeffs) c = dist(rng);
    const Fn1 poly = [&](double x) { return eval_modal(coeffs, cell, x); };
    for (ProjectionKind kind : {ProjectionKind::l2, ProjectionKind::weighted, ProjectionKind::gr_minus, ProjectionKind::gr_plus}) {
      const auto c = project_1d(kind, poly, cell, k, &b);
      for (std::size_t n = 0; n < c.size(); ++n) {
        EXPECT_NEAR(c[n], coeffs[n], 1e-12) << to_string(kind) << " k=" << k;
      }
    }
  }
}

TEST(Projections, ObservedStabilityConstant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 12.0);
  const CellMap cell(0.0, 0.125);
  const QuadratureRule& rule = gauss_rule(30);
  const Fn1 b = [](double x) { return 1.0 + x * x; };
  auto norm = [&](const Fn1& g) {
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double v = g(cell.to_physical(rule.points[q]));
      s += rule.weights[q] * v * v;
    }
    return std::sqrt(s * cell.jacobian());
  };
  for (int trial = 0; trial < 100; ++trial) {
    const double a1 = amp(rng), a2 = amp(rng), f1 = freq(rng), f2 = freq(rng);
    const Fn1 w = [=](double x) { return a1 * std::sin(f1 * x + 0.3) + a2 * std::cos(f2 * x); };
    const double nw = norm(w);
    for (int k = 1; k <= 3; ++k) {
      const auto pl = project_l2(w, cell, k);
      const auto pb = project_weighted(w, b, cell, k);
      const auto pm = project_gr_minus(w, cell, k);
      const auto pp = project_gr_plus(w, cell, k);
      auto as_fn = [&](const std::vector<double>& c) { return Fn1([&c, &cell](double x) { return eval_modal(c, cell, x); }); };
      const double sh = std::sqrt(cell.width());
      EXPECT_LE(norm(as_fn(pl)), 5 * nw);
      EXPECT_LE(norm(as_fn(pb)), 5 * nw);
      EXPECT_LE(norm(as_fn(pm)), 5 * (nw + sh * std::abs(w(cell.b()))));
      EXPECT_LE(norm(as_fn(pp)), 5 * (nw + sh * std::abs(w(cell.a()))));
    }
  }
}

TEST(CompositeProjections, OneDimensionalDispatch) {
  const int n = 32;
  EXPECT_EQ(composite_minus_kind_1d(1, n), ProjectionKind::gr_minus);
  EXPECT_EQ(composite_minus_kind_1d(8, n), ProjectionKind::gr_minus);
  EXPECT_EQ(composite_minus_kind_1d(9, n), ProjectionKind::weighted);
  EXPECT_EQ(composite_minus_kind_1d(24, n), ProjectionKind::weighted);
  EXPECT_EQ(composite_minus_kind_1d(25, n), ProjectionKind::gr_minus);
  EXPECT_EQ(composite_minus_kind_1d(32, n), ProjectionKind::gr_minus);
  EXPECT_EQ(composite_plus_kind_1d(1, n), ProjectionKind::l2);
  EXPECT_EQ(composite_plus_kind_1d(2, n), ProjectionKind::gr_plus);
  EXPECT_EQ(composite_plus_kind_1d(32, n), ProjectionKind::gr_plus);
}

TEST(CompositeProjections, ReproduceGlobalPolynomials) {
  const Mesh1D mesh = build_shishkin_1d({16, 1e-4, 3.0, 1.0});
  const Fn1 u = [](double x) { return 1.0 - 2.0 * x + 3.0 * x * x; };
  const Fn1 b = [](double x) { return 1.0 + x; };
  const DGFunction1D pm = composite_P_minus_1d(u, b, mesh, 2);
  const DGFunction1D pp = composite_P_plus_1d(u, mesh, 2);
  EXPECT_LE(linf_error_1d(pm, u, mesh, {0, 16}), 1e-12);
  EXPECT_LE(linf_error_1d(pp, u, mesh, {0, 16}), 1e-12);
}

TEST(CompositeProjections, LayerErrorRateOnTwoLayerProblem) {
  const double eps = 1e-6;
  for (int k = 1; k <= 2; ++k) {
    const Problem1D p = paper_1d_problem(eps);
    std::vector<double> eu;
    std::vector<double> eq;
    std::vector<int> ns{32, 64, 128, 256, 512};
    for (int n : ns) {
      const Mesh1D mesh = build_shishkin_1d({n, eps, k + 1.0, 1.0});
      const DGFunction1D pu = composite_P_minus_1d(*p.u_exact, p.b, mesh, k);
      const Fn1 q = [&p](double x) { return p.q_exact(x); };
      const DGFunction1D pq = composite_P_plus_1d(q, mesh, k);
      eu.push_back(std::hypot(l2_error_1d(pu, *p.u_exact, mesh, {0, n / 4}), l2_error_1d(pu, *p.u_exact, mesh, {3 * n / 4, n})));
      eq.push_back(l2_error_1d(pq, q, mesh, {0, n}));
    }
    const auto ru = rate_shishkin(eu[3], eu[4], 256);
    const auto rq = rate_shishkin(eq[3], eq[4], 256);
    ASSERT_TRUE(ru && rq);
    EXPECT_GE(*ru, k + 0.9) << "k=" << k;
    EXPECT_GE(*rq, k + 0.9) << "k=" << k;
  }
}

TEST(CompositeProjections, CoarseSupNormAgainstLeadingTerm) {
  // Coarse cells use pi_b with b = 1, i.e. the L2 projection, and there u is
  // -cos(pi x) up to exponentially small terms. The P_1 projection of x^2/2 on
  // a cell of width h misses by h^2/12 at both ends, so the sup error tends to
  // pi^2 h^2 / 12 where |cos| is close to 1, next to the transition points.
  // sigma = 3 keeps the layer remnant at tau (N^-sigma) well below that.
  const int n = 256;
  const double eps = 1e-6;
  const Problem1D p = paper_1d_problem(eps);
  const Mesh1D mesh = build_shishkin_1d({n, eps, 3.0, 1.0});
  const DGFunction1D pu = composite_P_minus_1d(*p.u_exact, p.b, mesh, 1);
  const double h = mesh.width(n / 2);
  const double pi = std::acos(-1.0);
  const double leading = pi * pi * h * h / 12.0;
  const double err = linf_error_1d(pu, *p.u_exact, mesh, {n / 4, 3 * n / 4});
  EXPECT_LE(err, 1.01 * leading);
  EXPECT_GE(err, 0.9 * leading);
}

TEST(TensorProjection, ReproducesBilinearEverywhere) {
  const CellMap cx(0.0, 0.5);
  const CellMap cy(0.25, 1.0);
  const Fn2 z = [](double x, double y) { return x * y; };
  const Fn2 b = [](double x, double y) { return 2.0 + x * y; };
  const std::array<ProjectionKind, 3> kinds{ProjectionKind::l2, ProjectionKind::gr_minus, ProjectionKind::gr_plus};
  for (int k = 1; k <= 2; ++k) {
    for (ProjectionKind kx : kinds) {
      for (ProjectionKind ky : kinds) {
        const auto c = tensor_project_2d(kx, ky, z, cx, cy, k);
        for (double x : {0.0, 0.2, 0.5}) {
          for (double y : {0.25, 0.6, 1.0}) EXPECT_NEAR(eval_modal_2d(c, k, cx, cy, x, y), x * y, 1e-13);
        }
      }
    }
    const auto cw = tensor_project_2d(ProjectionKind::weighted, ProjectionKind::weighted, z, cx, cy, k, &b);
    EXPECT_NEAR(eval_modal_2d(cw, k, cx, cy, 0.3, 0.7), 0.21, 1e-13);
  }
}

TEST(TensorProjection, SeparableDataFactorsIntoOneDimensionalProjections) {
  const CellMap cx(0.0, 1.0);
  const CellMap cy(0.0, 1.0);
  const Fn2 z = [](double x, double y) { return x * x * y; };
  const auto c = tensor_project_2d(ProjectionKind::gr_minus, ProjectionKind::l2, z, cx, cy, 1);
  // x-factor: pi^- x^2 = -1/3 + 4x/3; y-factor: pi y = y.
  for (double x : {0.0, 0.4, 1.0}) {
    for (double y : {0.0, 0.3, 1.0}) {
      EXPECT_NEAR(eval_modal_2d(c, 1, cx, cy, x, y), (-1.0 / 3.0 + 4.0 * x / 3.0) * y, 1e-14);
    }
  }
  const Fn2 g = [](double x, double y) { return std::exp(x) * std::cos(2 * y); };
  const CellMap ax(0.1, 0.3);
  const CellMap ay(0.5, 0.55);
  const auto t = tensor_project_2d(ProjectionKind::gr_plus, ProjectionKind::gr_minus, g, ax, ay, 2);
  const auto gx = project_gr_plus([](double x) { return std::exp(x); }, ax, 2);
  const auto gy = project_gr_minus([](double y) { return std::cos(2 * y); }, ay, 2);
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) {
      EXPECT_NEAR(t[static_cast<std::size_t>(m * 3 + n)], gx[static_cast<std::size_t>(m)] * gy[static_cast<std::size_t>(n)], 1e-13);
    }
  }
}

TEST(CompositeProjections2D, DispatchTable) {
  const int n = 16;
  const KindPair a = composite_kind_2d(Composite2D::u_minus, 1, n / 2, n);
  EXPECT_EQ(a.x, ProjectionKind::gr_minus);
  EXPECT_EQ(a.y, ProjectionKind::l2);
  const KindPair b = composite_kind_2d(Composite2D::u_minus, n / 2, 1, n);
  EXPECT_EQ(b.x, ProjectionKind::l2);
  EXPECT_EQ(b.y, ProjectionKind::gr_minus);
  const KindPair c = composite_kind_2d(Composite2D::u_minus, n / 2, n / 2, n);
  EXPECT_EQ(c.x, ProjectionKind::weighted);
  const KindPair d = composite_kind_2d(Composite2D::p_plus_x, 1, 5, n);
  EXPECT_EQ(d.x, ProjectionKind::l2);
  EXPECT_EQ(d.y, ProjectionKind::l2);
  const KindPair e = composite_kind_2d(Composite2D::p_plus_x, 2, 5, n);
  EXPECT_EQ(e.x, ProjectionKind::gr_plus);
  EXPECT_EQ(e.y, ProjectionKind::l2);
  const KindPair f = composite_kind_2d(Composite2D::q_plus_y, 5, 2, n);
  EXPECT_EQ(f.x, ProjectionKind::l2);
  EXPECT_EQ(f.y, ProjectionKind::gr_plus);
}

TEST(CompositeProjections2D, ReproduceTensorPolynomials) {
  const Mesh2D mesh = build_shishkin_2d({8, 1e-4, 2.0, 1.0});
  const Fn2 z = [](double x, double y) { return 1.0 + x - 2 * y + 3 * x * y; };
  const Fn2 b = [](double, double) { return 2.0; };
  for (Composite2D which : {Composite2D::u_minus, Composite2D::p_plus_x, Composite2D::q_plus_y}) {
    const DGFunction2D f = composite_P_2d(which, z, b, mesh, 1);
    for (double x : {0.001, 0.3, 0.77, 0.999}) {
      for (double y : {0.002, 0.5, 0.95}) EXPECT_NEAR(f.eval(mesh, x, y), z(x, y), 1e-12);
    }
  }
}

}  // namespace
}  // namespace ldgs
