#include "ldgs/linear_solver.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <utility>

#include "ldgs/errors.hpp"

namespace ldgs {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(rows + 1, 0);
  m.col_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  std::size_t current_row = 0;
  for (const Triplet& t : entries) {
    if (t.row >= rows || t.col >= cols) throw ConfigError("SparseMatrix: triplet out of range");
    while (current_row < t.row) m.row_ptr_[++current_row] = m.col_idx_.size();
    if (!m.col_idx_.empty() && m.row_ptr_[current_row] < m.col_idx_.size() && m.col_idx_.back() == t.col) {
      m.values_.back() += t.value;
    } else {
      m.col_idx_.push_back(t.col);
      m.values_.push_back(t.value);
    }
  }
  while (current_row < rows) m.row_ptr_[++current_row] = m.col_idx_.size();
  return m;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[col_idx_[p]];
    y[i] = s;
  }
  return y;
}

double SparseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += std::abs(values_[p]);
    best = std::max(best, s);
  }
  return best;
}

std::size_t SparseMatrix::lower_bandwidth() const {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_ptr_[i] != row_ptr_[i + 1]) {
      const std::size_t j = col_idx_[row_ptr_[i]];
      if (j < i) bw = std::max(bw, i - j);
    }
  }
  return bw;
}

std::size_t SparseMatrix::upper_bandwidth() const {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_ptr_[i] != row_ptr_[i + 1]) {
      const std::size_t j = col_idx_[row_ptr_[i + 1] - 1];
      if (j > i) bw = std::max(bw, j - i);
    }
  }
  return bw;
}

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), store_(ld_ * n, 0.0) {
  if (n == 0) throw ConfigError("BandedMatrix: empty matrix");
  if (kl >= n && n > 1) kl_ = n - 1;
  if (ku >= n && n > 1) ku_ = n - 1;
  ld_ = 2 * kl_ + ku_ + 1;
  store_.assign(ld_ * n, 0.0);
}

BandedMatrix BandedMatrix::from_sparse(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw ConfigError("BandedMatrix: matrix must be square");
  BandedMatrix b(a.rows(), a.lower_bandwidth(), a.upper_bandwidth());
  const auto& rp = a.row_offsets();
  const auto& ci = a.col_indices();
  const auto& v = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) b.set(i, ci[p], v[p]);
  }
  return b;
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
  if (!in_band(i, j)) return 0.0;
  return ab(kl_ + ku_ + i - j, j);
}

void BandedMatrix::set(std::size_t i, std::size_t j, double v) {
  if (!in_band(i, j)) throw ConfigError("BandedMatrix: entry outside the band");
  ab(kl_ + ku_ + i - j, j) = v;
}

void BandedMatrix::add(std::size_t i, std::size_t j, double v) {
  if (!in_band(i, j)) throw ConfigError("BandedMatrix: entry outside the band");
  ab(kl_ + ku_ + i - j, j) += v;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t i0 = j > ku_ ? j - ku_ : 0;
    const std::size_t i1 = std::min(n_ - 1, j + kl_);
    for (std::size_t i = i0; i <= i1; ++i) y[i] += ab(kl_ + ku_ + i - j, j) * x[j];
  }
  return y;
}

double BandedMatrix::norm_inf() const {
  std::vector<double> rs(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t i0 = j > ku_ ? j - ku_ : 0;
    const std::size_t i1 = std::min(n_ - 1, j + kl_);
    for (std::size_t i = i0; i <= i1; ++i) rs[i] += std::abs(ab(kl_ + ku_ + i - j, j));
  }
  return *std::max_element(rs.begin(), rs.end());
}

BandedLU::BandedLU(BandedMatrix a) : lu_(std::move(a)), pivots_(lu_.n_) {
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.kl_;
  const std::size_t ku = lu_.ku_;
  const std::size_t kv = kl + ku;

  std::vector<double> row_norm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i0 = j > ku ? j - ku : 0;
    const std::size_t i1 = std::min(n - 1, j + kl);
    for (std::size_t i = i0; i <= i1; ++i) row_norm[i] = std::max(row_norm[i], std::abs(lu_.ab(kv + i - j, j)));
  }

  std::size_t ju = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t km = std::min(kl, n - 1 - j);
    std::size_t jp = 0;
    double best = std::abs(lu_.ab(kv, j));
    for (std::size_t p = 1; p <= km; ++p) {
      const double v = std::abs(lu_.ab(kv + p, j));
      if (v > best) {
        best = v;
        jp = p;
      }
    }
    pivots_[j] = j + jp;
    if (best <= 1e-14 * row_norm[j + jp] || best == 0.0) {
      throw SingularMatrixError("banded LU: zero pivot", j);
    }
    ju = std::max(ju, std::min(j + ku + jp, n - 1));
    if (jp != 0) {
      for (std::size_t c = j; c <= ju; ++c) std::swap(lu_.ab(kv + j - c, c), lu_.ab(kv + j + jp - c, c));
      std::swap(row_norm[j], row_norm[j + jp]);
    }
    if (km > 0) {
      const double inv = 1.0 / lu_.ab(kv, j);
      for (std::size_t p = 1; p <= km; ++p) lu_.ab(kv + p, j) *= inv;
      for (std::size_t c = j + 1; c <= ju; ++c) {
        const double a = lu_.ab(kv + j - c, c);
        if (a == 0.0) continue;
        for (std::size_t p = 1; p <= km; ++p) lu_.ab(kv + p + j - c, c) -= lu_.ab(kv + p, j) * a;
      }
    }
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.kl_;
  const std::size_t kv = kl + lu_.ku_;
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t lm = std::min(kl, n - 1 - j);
    if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
    for (std::size_t p = 1; p <= lm; ++p) b[j + p] -= lu_.ab(kv + p, j) * b[j];
  }
  for (std::size_t jj = n; jj-- > 0;) {
    b[jj] /= lu_.ab(kv, jj);
    const std::size_t i0 = jj > kv ? jj - kv : 0;
    for (std::size_t i = i0; i < jj; ++i) b[i] -= lu_.ab(kv + i - jj, jj) * b[jj];
  }
  return b;
}

namespace {

double power_of_two_scale(double max_abs) {
  int e = 0;
  std::frexp(max_abs, &e);  // max_abs = m 2^e, m in [0.5, 1)
  return std::ldexp(1.0, 1 - e);
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Equilibrated equilibrate(const SparseMatrix& a) {
  Equilibrated out{a, std::vector<double>(a.rows(), 1.0), std::vector<double>(a.cols(), 1.0)};
  const auto& rp = a.row_offsets();
  const auto& ci = a.col_indices();
  auto& v = out.matrix.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double m = 0.0;
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) m = std::max(m, std::abs(v[p]));
    if (m == 0.0) throw SingularMatrixError("equilibrate: zero row", i);
    out.row_scale[i] = power_of_two_scale(m);
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) v[p] *= out.row_scale[i];
  }
  std::vector<double> col_max(a.cols(), 0.0);
  for (std::size_t p = 0; p < v.size(); ++p) col_max[ci[p]] = std::max(col_max[ci[p]], std::abs(v[p]));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (col_max[j] == 0.0) throw SingularMatrixError("equilibrate: zero column", j);
    out.col_scale[j] = power_of_two_scale(col_max[j]);
  }
  for (std::size_t p = 0; p < v.size(); ++p) v[p] *= out.col_scale[ci[p]];
  return out;
}

double relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b) {
  const std::vector<double> ax = a.multiply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - b[i]));
  const double denom = a.norm_inf() * inf_norm(x) + inf_norm(b);
  return denom > 0.0 ? r / denom : r;
}

double relative_residual(const BandedMatrix& a, std::span<const double> x, std::span<const double> b) {
  const std::vector<double> ax = a.multiply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - b[i]));
  const double denom = a.norm_inf() * inf_norm(x) + inf_norm(b);
  return denom > 0.0 ? r / denom : r;
}

SolveResult lu_banded_solve(const BandedMatrix& a, std::span<const double> rhs) {
  if (rhs.size() != a.size()) throw ConfigError("lu_banded_solve: dimension mismatch");
  BandedLU lu(a);
  SolveResult out{lu.solve(rhs), 0.0};
  out.residual = relative_residual(a, out.x, rhs);
  return out;
}

namespace {

std::vector<double> scaled_rhs(const Equilibrated& eq, std::span<const double> rhs) {
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] *= eq.row_scale[i];
  return b;
}

void unscale_solution(const Equilibrated& eq, std::vector<double>& y) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] *= eq.col_scale[j];
}

}  // namespace

SolveResult banded_solve(const SparseMatrix& a, std::span<const double> rhs) {
  if (rhs.size() != a.rows()) throw ConfigError("banded_solve: dimension mismatch");
  const Equilibrated eq = equilibrate(a);
  BandedLU lu(BandedMatrix::from_sparse(eq.matrix));
  SolveResult out{lu.solve(scaled_rhs(eq, rhs)), 0.0};
  unscale_solution(eq, out.x);
  out.residual = relative_residual(a, out.x, rhs);
  return out;
}

SolveResult sparse_solve(const SparseMatrix& a, std::span<const double> rhs) {
  if (a.rows() != a.cols() || rhs.size() != a.rows()) throw ConfigError("sparse_solve: dimension mismatch");
  const Equilibrated eq = equilibrate(a);
  const auto n = static_cast<Eigen::Index>(a.rows());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(eq.matrix.nonzeros());
  const auto& rp = eq.matrix.row_offsets();
  const auto& ci = eq.matrix.col_indices();
  const auto& v = eq.matrix.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      trips.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ci[p]), v[p]);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    throw SingularMatrixError("sparse LU: " + lu.lastErrorMessage(), 0);
  }
  const std::vector<double> b = scaled_rhs(eq, rhs);
  const Eigen::VectorXd y = lu.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
  if (lu.info() != Eigen::Success || !y.allFinite()) {
    throw SingularMatrixError("sparse LU: solve failed", 0);
  }
  SolveResult out{std::vector<double>(y.data(), y.data() + n), 0.0};
  unscale_solution(eq, out.x);
  out.residual = relative_residual(a, out.x, rhs);
  return out;
}

SolveResult condensed_solve(const SparseMatrix& a, std::span<const double> rhs, std::span<const char> candidates) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n || candidates.size() != n) {
    throw ConfigError("condensed_solve: dimension mismatch");
  }
  const auto& rp = a.row_offsets();
  const auto& ci = a.col_indices();
  const auto& av = a.values();

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<double> diag(n, 0.0);
  std::vector<char> eliminated(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!candidates[i]) continue;
    bool isolated = true;
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      if (ci[p] == i) {
        diag[i] = av[p];
      } else if (candidates[ci[p]]) {
        isolated = false;
      }
    }
    eliminated[i] = (isolated && diag[i] != 0.0) ? 1 : 0;
  }

  std::vector<std::size_t> reduced_index(n, kNone);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!eliminated[i]) {
      reduced_index[i] = kept.size();
      kept.push_back(i);
    }
  }
  if (kept.size() == n) return sparse_solve(a, rhs);

  const std::size_t m = kept.size();
  std::vector<Triplet> trips;
  trips.reserve(a.nonzeros());
  std::vector<double> b(m, 0.0);
  std::vector<double> acc(m, 0.0);
  std::vector<char> touched(m, 0);
  std::vector<std::size_t> pattern;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = kept[r];
    b[r] = rhs[i];
    pattern.clear();
    auto scatter = [&](std::size_t col, double v) {
      const std::size_t c = reduced_index[col];
      if (!touched[c]) {
        touched[c] = 1;
        pattern.push_back(c);
      }
      acc[c] += v;
    };
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      const std::size_t j = ci[p];
      if (!eliminated[j]) {
        scatter(j, av[p]);
        continue;
      }
      const double f = av[p] / diag[j];
      b[r] -= f * rhs[j];
      for (std::size_t q = rp[j]; q < rp[j + 1]; ++q) {
        if (ci[q] != j) scatter(ci[q], -f * av[q]);
      }
    }
    for (const std::size_t c : pattern) {
      trips.push_back({r, c, acc[c]});
      acc[c] = 0.0;
      touched[c] = 0;
    }
  }

  const SparseMatrix reduced = SparseMatrix::from_triplets(m, m, std::move(trips));
  const SolveResult inner = sparse_solve(reduced, b);

  SolveResult out{std::vector<double>(n, 0.0), 0.0};
  for (std::size_t r = 0; r < m; ++r) out.x[kept[r]] = inner.x[r];
  for (std::size_t i = 0; i < n; ++i) {
    if (!eliminated[i]) continue;
    double s = rhs[i];
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      if (ci[p] != i) s -= av[p] * out.x[ci[p]];
    }
    out.x[i] = s / diag[i];
  }
  out.residual = relative_residual(a, out.x, rhs);
  return out;
}

}  // namespace ldgs
