#include "radialmp/tridiagonal.hpp"

#include <cmath>
#include <utility>

#include "radialmp/error.hpp"

namespace radialmp {

void SymmetricTridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < n) v += off[i] * x[i + 1];
    y[i] = v;
  }
}

TridiagonalCholesky::TridiagonalCholesky(const SymmetricTridiagonal& m) {
  const std::size_t n = m.size();
  d_.resize(n);
  l_.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = m.diag[i];
    if (i > 0) d -= l_[i - 1] * m.off[i - 1];
    if (!(d > 0.0)) throw NumericalError("tridiagonal matrix is not positive definite");
    d_[i] = d;
    if (i + 1 < n) l_[i] = m.off[i] / d;
  }
}

void TridiagonalCholesky::solve(std::span<double> rhs) const {
  const std::size_t n = d_.size();
  for (std::size_t i = 1; i < n; ++i) rhs[i] -= l_[i - 1] * rhs[i - 1];
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= d_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= l_[i] * rhs[i + 1];
}

bool solve_tridiagonal_pivoted(std::vector<double> lower, std::vector<double> diag,
                               std::vector<double> upper, std::span<double> rhs) {
  // Row i holds lower[i-1], diag[i], upper[i]; a second superdiagonal appears
  // after row swaps.
  const std::size_t n = diag.size();
  if (n == 0) return true;
  std::vector<double> upper2(n, 0.0);
  upper.resize(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double& sub = lower[i];  // entry (i+1, i)
    if (std::abs(sub) > std::abs(diag[i])) {
      std::swap(diag[i], sub);
      std::swap(upper[i], diag[i + 1]);
      std::swap(upper2[i], upper[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (diag[i] == 0.0) return false;
    const double f = sub / diag[i];
    diag[i + 1] -= f * upper[i];
    upper[i + 1] -= f * upper2[i];
    rhs[i + 1] -= f * rhs[i];
    sub = 0.0;
  }
  if (diag[n - 1] == 0.0) return false;
  rhs[n - 1] /= diag[n - 1];
  if (n >= 2) rhs[n - 2] = (rhs[n - 2] - upper[n - 2] * rhs[n - 1]) / diag[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) {
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1] - upper2[i] * rhs[i + 2]) / diag[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(rhs[i])) return false;
  }
  return true;
}

}  // namespace radialmp
