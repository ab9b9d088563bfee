#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldgs {

/// Invalid user-supplied parameters (mesh size, degree, quadrature order, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degenerate geometry: empty cells, indices outside the mesh.
class MeshError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A local projection system could not be solved (e.g. a nonpositive weight).
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pivot below tolerance during factorization.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::size_t pivot)
      : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}
  [[nodiscard]] std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Solver finished but the achieved residual misses the requested bound.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldgs
