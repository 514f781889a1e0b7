#pragma once

#include <span>
#include <vector>

namespace radialmp {

/// Symmetric tridiagonal matrix: diag[0..n), off[0..n-1) with off[i] = A(i, i+1).
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// LDL^T factorization of a symmetric positive-definite tridiagonal matrix.
/// Throws NumericalError on a nonpositive pivot.
class TridiagonalCholesky {
 public:
  TridiagonalCholesky() = default;
  explicit TridiagonalCholesky(const SymmetricTridiagonal& m);

  std::size_t size() const noexcept { return d_.size(); }
  /// Solves in place.
  void solve(std::span<double> rhs) const;

 private:
  std::vector<double> d_;  // pivots
  std::vector<double> l_;  // unit lower bidiagonal multipliers
};

/// Gaussian elimination with partial pivoting for a general (possibly
/// indefinite) tridiagonal system; returns false if the matrix is singular.
bool solve_tridiagonal_pivoted(std::vector<double> lower, std::vector<double> diag,
                               std::vector<double> upper, std::span<double> rhs);

}  // namespace radialmp
