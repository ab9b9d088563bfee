#pragma once

// Test-only helpers: random discrete functions and a textbook dense LU used
// as an independent oracle for the production solvers.

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ldgs/dg_function.hpp"
#include "ldgs/ldg1d.hpp"
#include "ldgs/ldg2d.hpp"

namespace ldgs::testing {

using Dense = std::vector<std::vector<double>>;

inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = j;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (std::abs(a[i][j]) > std::abs(a[p][j])) p = i;
    }
    if (a[p][j] == 0.0) throw std::runtime_error("dense_solve: singular");
    std::swap(a[p], a[j]);
    std::swap(b[p], b[j]);
    for (std::size_t i = j + 1; i < n; ++i) {
      const double f = a[i][j] / a[j][j];
      for (std::size_t c = j; c < n; ++c) a[i][c] -= f * a[j][c];
      b[i] -= f * b[j];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (const double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline void fill_random(std::vector<double>& v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& x : v) x = dist(rng);
}

/// Random n x n band matrix with bandwidths (kl, ku). The diagonal has random
/// sign and a magnitude comparable to the off-diagonal row mass, which keeps
/// the system well conditioned without making it diagonally dominant, so
/// partial pivoting still swaps rows.
inline Dense random_banded(std::size_t n, std::size_t kl, std::size_t ku, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  const double mass = 0.5 * static_cast<double>(kl + ku + 1);
  Dense d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i > kl ? i - kl : 0); j <= std::min(n - 1, i + ku); ++j) d[i][j] = v(rng);
    const double s = v(rng);
    d[i][i] = (s < 0.0 ? -1.0 : 1.0) * mass * (0.5 + 0.5 * std::abs(s));
  }
  return d;
}

/// Random (U, Q) with O(1) coefficients in U and O(scale) in Q.
inline MixedSolution1D random_mixed_1d(int cells, int k, std::mt19937_64& rng, double q_scale = 1.0) {
  MixedSolution1D w{DGFunction1D(cells, k), DGFunction1D(cells, k), 0.0};
  fill_random(w.U.data(), rng);
  fill_random(w.Q.data(), rng);
  for (double& c : w.Q.data()) c *= q_scale;
  return w;
}

inline MixedSolution2D random_mixed_2d(int cells, int k, std::mt19937_64& rng, double flux_scale = 1.0) {
  MixedSolution2D w{DGFunction2D(cells, k), DGFunction2D(cells, k), DGFunction2D(cells, k), 0.0};
  fill_random(w.U.data(), rng);
  fill_random(w.P.data(), rng);
  fill_random(w.Q.data(), rng);
  for (double& c : w.P.data()) c *= flux_scale;
  for (double& c : w.Q.data()) c *= flux_scale;
  return w;
}

}  // namespace ldgs::testing
