#pragma once

// Direct solvers: banded LU with partial pivoting for the 1D systems and a
// fill-reducing sparse LU for the (condensed) 2D systems. Both run on
// power-of-two equilibrated copies of the input.

#include <cstddef>
#include <span>
#include <vector>

namespace ldgs {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed row storage; column indices sorted and unique per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Duplicate entries are summed.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return values_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& row_offsets() const noexcept { return row_ptr_; }
  [[nodiscard]] const std::vector<std::size_t>& col_indices() const noexcept { return col_idx_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::vector<double>& values() noexcept { return values_; }

  /// Entry (i, j), zero if not stored.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;
  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
  [[nodiscard]] double norm_inf() const;
  [[nodiscard]] std::size_t lower_bandwidth() const;
  [[nodiscard]] std::size_t upper_bandwidth() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// Square band matrix in LAPACK general-band layout with kl extra rows for
/// the fill created by row interchanges.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);
  static BandedMatrix from_sparse(const SparseMatrix& a);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t lower() const noexcept { return kl_; }
  [[nodiscard]] std::size_t upper() const noexcept { return ku_; }
  [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept {
    return i <= j + kl_ && j <= i + ku_;
  }
  [[nodiscard]] double get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double v);
  void add(std::size_t i, std::size_t j, double v);

  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
  [[nodiscard]] double norm_inf() const;

 private:
  friend class BandedLU;
  [[nodiscard]] double& ab(std::size_t r, std::size_t c) { return store_[c * ld_ + r]; }
  [[nodiscard]] double ab(std::size_t r, std::size_t c) const { return store_[c * ld_ + r]; }

  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  std::size_t ld_;
  std::vector<double> store_;
};

/// In-place LU factorization with partial pivoting inside the band. A pivot
/// below 1e-14 times the inf-norm of its original row raises SingularMatrixError.
class BandedLU {
 public:
  explicit BandedLU(BandedMatrix a);
  [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;

 private:
  BandedMatrix lu_;
  std::vector<std::size_t> pivots_;
};

struct SolveResult {
  std::vector<double> x;
  double residual = 0.0;  // ||Ax-b||_inf / (||A||_inf ||x||_inf + ||b||_inf)
};

struct Equilibrated {
  SparseMatrix matrix;              // diag(row_scale) * A * diag(col_scale)
  std::vector<double> row_scale;    // powers of two
  std::vector<double> col_scale;    // powers of two
};

/// Row then column scaling by powers of two; every row and column maximum of
/// the result lies in [1, 2). Zero rows/columns raise SingularMatrixError.
Equilibrated equilibrate(const SparseMatrix& a);

double relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b);
double relative_residual(const BandedMatrix& a, std::span<const double> x, std::span<const double> b);

/// Banded LU on an unscaled band matrix.
SolveResult lu_banded_solve(const BandedMatrix& a, std::span<const double> rhs);

/// Equilibrate, convert to band storage and factor.
SolveResult banded_solve(const SparseMatrix& a, std::span<const double> rhs);

/// Equilibrate and factor with a COLAMD-ordered sparse LU.
SolveResult sparse_solve(const SparseMatrix& a, std::span<const double> rhs);

/// Static condensation: every candidate unknown s whose row couples to no
/// other candidate (only A_ss among candidate columns) is eliminated through
/// the Schur complement; the reduced system goes to sparse_solve and the
/// eliminated unknowns are recovered by back-substitution. The residual is
/// measured on the full system.
SolveResult condensed_solve(const SparseMatrix& a, std::span<const double> rhs, std::span<const char> candidates);

}  // namespace ldgs
