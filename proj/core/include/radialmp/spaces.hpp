#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "radialmp/grid.hpp"
#include "radialmp/potential.hpp"
#include "radialmp/tridiagonal.hpp"

namespace radialmp {

/// Nodal values of a radial function on a RadialGrid. Values are nodal and
/// derivatives are the constant slopes on each cell (P1 elements in r).
class DiscreteRadialFunction {
 public:
  DiscreteRadialFunction() = default;
  DiscreteRadialFunction(std::shared_ptr<const RadialGrid> grid, std::vector<double> values);

  static DiscreteRadialFunction zero(std::shared_ptr<const RadialGrid> grid);
  static DiscreteRadialFunction sample(std::shared_ptr<const RadialGrid> grid,
                                       const std::function<double(double)>& fn);

  const RadialGrid& grid() const { return *grid_; }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double slope(std::size_t cell) const;
  double max_abs() const;

  /// Piecewise-linear interpolant onto another grid (zero outside this grid).
  DiscreteRadialFunction interpolate_to(std::shared_ptr<const RadialGrid> target) const;

  DiscreteRadialFunction& operator+=(const DiscreteRadialFunction& o);
  DiscreteRadialFunction& operator-=(const DiscreteRadialFunction& o);
  DiscreteRadialFunction& operator*=(double c);
  friend DiscreteRadialFunction operator+(DiscreteRadialFunction a, const DiscreteRadialFunction& b) {
    return a += b;
  }
  friend DiscreteRadialFunction operator-(DiscreteRadialFunction a, const DiscreteRadialFunction& b) {
    return a -= b;
  }
  friend DiscreteRadialFunction operator*(double c, DiscreteRadialFunction a) { return a *= c; }

  /// CSV with header "r,value" (or the given value column name), 17 significant digits.
  void write_csv(std::ostream& os, const char* value_column = "value") const;
  /// Reads "r,<name>" CSV; the grid is rebuilt from the r column.
  static DiscreteRadialFunction read_csv(std::istream& is, int N);

 private:
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<double> values_;
};

/// Throws GridMismatch unless both functions live on the same grid.
void require_same_grid(const DiscreteRadialFunction& u, const DiscreteRadialFunction& h);

/// Discrete inner product of X on a fixed grid:
///   (u|h) = sum_cells k_c du_c dh_c + sum_nodes m_i u_i h_i
/// with k_c = omega_N A(mid_c) |cell|_N / width_c^2 and m_i = omega_N w_i V(r_i).
/// The Gram matrix is assembled once; Riesz maps pin the last node to zero
/// (Dirichlet truncation at r_max).
class XForm {
 public:
  XForm(std::shared_ptr<const RadialGrid> grid, const PotentialSpec& A, const PotentialSpec& V);

  const RadialGrid& grid() const { return *grid_; }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const noexcept { return grid_; }
  std::span<const double> stiffness() const noexcept { return stiffness_; }
  std::span<const double> mass() const noexcept { return mass_; }

  /// Gradient part over a range of cells and potential part over nodal weights.
  double a_energy(std::span<const double> u, const CellRange& cells) const;
  double a_energy(std::span<const double> u) const;
  double v_energy(std::span<const double> u) const;
  double inner(std::span<const double> u, std::span<const double> h) const;
  double norm(std::span<const double> u) const;

  /// y = G u (the dual vector h -> (u|h)).
  void apply(std::span<const double> u, std::span<double> y) const;

  /// Solves (g|h) = dual[h] for all h with h_last = 0; returns g with g_last = 0.
  std::vector<double> riesz(std::span<const double> dual) const;

  /// Gram matrix on the free nodes (all but the last).
  const SymmetricTridiagonal& gram() const noexcept { return gram_; }

 private:
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<double> stiffness_;
  std::vector<double> mass_;
  SymmetricTridiagonal gram_;
  TridiagonalCholesky chol_;
};

struct NormBundle {
  double norm_A = 0.0;
  double norm_V = 0.0;
  double norm_X = 0.0;
  std::optional<double> split_radius;
  double norm_A_ball = 0.0, norm_A_complement = 0.0;
};

double norm_A(const DiscreteRadialFunction& u, const PotentialSpec& A);
double norm_A(const DiscreteRadialFunction& u, const PotentialSpec& A, const Region& region);
NormBundle norms(const DiscreteRadialFunction& u, const PotentialSpec& A, const PotentialSpec& V,
                 std::optional<double> split_radius = std::nullopt);
double inner_product_X(const DiscreteRadialFunction& u, const DiscreteRadialFunction& h,
                       const PotentialSpec& A, const PotentialSpec& V);

/// (int_region K |u|^q)^{1/q}
double norm_LqK(const DiscreteRadialFunction& u, const PotentialSpec& K, double q,
                const Region& region = Region::all());

struct SumNorm {
  double value = 0.0;
  double threshold = 0.0;
};

/// Computational norm of L^{q1}_K + L^{q2}_K: the best level-set split
/// u = u 1_{|u|>T} + u 1_{|u|<=T}, minimized over T by golden-section search.
/// This is an upper bound for the infimum over all decompositions.
SumNorm sum_norm(const DiscreteRadialFunction& u, const PotentialSpec& K, double q1, double q2);

/// max{ ||u 1_{|u|>T}||_{q1}, ||u 1_{|u|<=T}||_{q2} } for a fixed threshold.
double sum_norm_at(const DiscreteRadialFunction& u, const PotentialSpec& K, double q1, double q2,
                   double threshold);

struct DecayCheck {
  double max_ratio = 0.0;
  double C_bound = 0.0;
  double exponent = 0.0;  // (N + a - 2)/2
  double C_potential = 0.0;  // C_0(R) or C_inf(R)
  bool passed = false;
};

struct DecayOptions {
  double slack = 0.05;
  /// Override of the fitted asymptotic exponent of A.
  std::optional<double> a_exponent;
};

/// Pointwise bound |u(r)| <= C r^{-(N+a_inf-2)/2} ||u||_{A, |x|>R} for r >= R.
DecayCheck verify_decay_infinity(const DiscreteRadialFunction& u, const PotentialSpec& A, double R,
                                 const DecayOptions& options = {});

/// Pointwise bound |u(r)| <= C r^{-(N+a_0-2)/2} ||u||_{A, B_R} for r < R,
/// for u vanishing at and beyond R.
DecayCheck verify_decay_origin(const DiscreteRadialFunction& u, const PotentialSpec& A, double R,
                               const DecayOptions& options = {});

}  // namespace radialmp
