#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace radialmp {

/// Surface measure of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

enum class Grading {
  Geometric,  ///< constant node ratio on [r_min, r_max]
  TwoZone,    ///< geometric on [r_min, switch_radius], quadratic-algebraic beyond
};

std::string to_string(Grading g);
Grading grading_from_string(const std::string& name);

struct GridParams {
  double r_min = 1e-6;
  double r_max = 1e3;
  int nodes = 2000;
  Grading grading = Grading::Geometric;
  double switch_radius = 1.0;   // TwoZone only
  double inner_fraction = 0.5;  // TwoZone only: share of nodes in the inner zone
};

/// Integration region for radial quadrature. Bounds are snapped to nodes.
struct Region {
  enum class Kind { All, Ball, Complement, Annulus };
  Kind kind = Kind::All;
  double lo = 0.0;
  double hi = 0.0;

  static Region all() { return {}; }
  static Region ball(double R) { return {Kind::Ball, 0.0, R}; }
  static Region complement(double R) { return {Kind::Complement, R, 0.0}; }
  static Region annulus(double r, double R) { return {Kind::Annulus, r, R}; }
};

/// Cell range [begin, end) of a region after snapping, with snap distances.
struct CellRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  double snap_lo = 0.0;
  double snap_hi = 0.0;
  bool empty() const { return begin >= end; }
};

/// Immutable graded mesh r_1 < ... < r_M on [r_min, r_max] for radial
/// functions in R^N, with weights for integrals of the form
/// int g(r) r^{N-1} dr. Each cell's exact mass (b^N - a^N)/N is split between
/// its two endpoints by linear interpolation (P1 hat functions).
class RadialGrid {
 public:
  static std::shared_ptr<const RadialGrid> build(int N, double r_min, double r_max, int nodes,
                                                 Grading grading = Grading::Geometric);
  static std::shared_ptr<const RadialGrid> build(int N, const GridParams& params);
  /// Grid over explicit nodes (strictly increasing, positive, >= 3 of them).
  static std::shared_ptr<const RadialGrid> from_nodes(int N, std::vector<double> nodes);

  int dimension() const noexcept { return N_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t cells() const noexcept { return nodes_.size() - 1; }
  double r_min() const noexcept { return nodes_.front(); }
  double r_max() const noexcept { return nodes_.back(); }
  double omega() const noexcept { return omega_; }
  Grading grading() const noexcept { return grading_; }

  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double width(std::size_t cell) const { return nodes_[cell + 1] - nodes_[cell]; }
  double midpoint(std::size_t cell) const { return 0.5 * (nodes_[cell] + nodes_[cell + 1]); }

  /// int_cell r^{N-1} dr
  std::span<const double> cell_mass() const noexcept { return cell_mass_; }
  /// Share of cell i's mass carried by its left / right node.
  std::span<const double> left_weight() const noexcept { return left_; }
  std::span<const double> right_weight() const noexcept { return right_; }
  /// Nodal weights (sum of adjacent cell shares), without omega_N.
  std::span<const double> weights() const noexcept { return weights_; }

  /// Largest node ratio r_{i+1}/r_i.
  double max_ratio() const;

  /// Index of the node nearest to r in log distance.
  std::size_t snap(double r) const;

  CellRange cells_of(const Region& region) const;

  /// Nodal weights restricted to a region (omega_N not included).
  std::vector<double> region_weights(const Region& region) const;

 private:
  RadialGrid(int N, std::vector<double> nodes, Grading grading);

  int N_;
  Grading grading_;
  double omega_;
  std::vector<double> nodes_;
  std::vector<double> cell_mass_;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> weights_;
};

struct QuadratureResult {
  double value = 0.0;
  bool empty = false;
  double snap_lo = 0.0;
  double snap_hi = 0.0;
};

/// omega_N * sum of nodal weights * g over the region (nodal data, P1 rule).
QuadratureResult quadrature(std::span<const double> values, const RadialGrid& grid,
                            const Region& region = Region::all());

/// omega_N * int g(r) r^{N-1} dr over the region, 4-point Gauss-Legendre per cell.
QuadratureResult quadrature(const std::function<double(double)>& g, const RadialGrid& grid,
                            const Region& region = Region::all());

}  // namespace radialmp
