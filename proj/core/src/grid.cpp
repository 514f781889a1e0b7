#include "radialmp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radialmp/error.hpp"

namespace radialmp {
namespace {

void check_dimension(int N) {
  if (N < 1) throw ParameterError("dimension must be positive");
}

std::vector<double> geometric_nodes(double r_min, double r_max, int M) {
  std::vector<double> nodes(static_cast<std::size_t>(M));
  const double log_ratio = std::log(r_max / r_min) / (M - 1);
  for (int i = 0; i < M; ++i) nodes[static_cast<std::size_t>(i)] = r_min * std::exp(log_ratio * i);
  nodes.front() = r_min;
  nodes.back() = r_max;
  return nodes;
}

}  // namespace

double sphere_area(int N) {
  if (N < 1) throw ParameterError("sphere_area needs N >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

std::string to_string(Grading g) { return g == Grading::Geometric ? "geometric" : "two_zone"; }

Grading grading_from_string(const std::string& name) {
  if (name == "geometric") return Grading::Geometric;
  if (name == "two_zone") return Grading::TwoZone;
  throw ParameterError("unknown grading '" + name + "'");
}

RadialGrid::RadialGrid(int N, std::vector<double> nodes, Grading grading)
    : N_(N), grading_(grading), omega_(sphere_area(N)), nodes_(std::move(nodes)) {
  const std::size_t cells = nodes_.size() - 1;
  cell_mass_.resize(cells);
  left_.resize(cells);
  right_.resize(cells);
  weights_.assign(nodes_.size(), 0.0);
  // Binomial expansion of int_a^b r^{N-1} phi(r) dr in h = b - a; every term is
  // positive, so there is no cancellation for thin cells far from the origin.
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = nodes_[i];
    const double h = nodes_[i + 1] - a;
    double binom = 1.0;
    double left = 0.0, right = 0.0;
    double hk = 1.0;
    for (int k = 0; k <= N - 1; ++k) {
      const double term = binom * std::pow(a, N - 1 - k) * hk;
      left += term / ((k + 1.0) * (k + 2.0));
      right += term / (k + 2.0);
      binom = binom * (N - 1 - k) / (k + 1.0);
      hk *= h;
    }
    left_[i] = left * h;
    right_[i] = right * h;
    cell_mass_[i] = left_[i] + right_[i];
    weights_[i] += left_[i];
    weights_[i + 1] += right_[i];
  }
}

std::shared_ptr<const RadialGrid> RadialGrid::build(int N, double r_min, double r_max, int nodes,
                                                    Grading grading) {
  GridParams params;
  params.r_min = r_min;
  params.r_max = r_max;
  params.nodes = nodes;
  params.grading = grading;
  return build(N, params);
}

std::shared_ptr<const RadialGrid> RadialGrid::build(int N, const GridParams& p) {
  check_dimension(N);
  if (!(p.r_min > 0.0) || !(p.r_max > p.r_min) || !std::isfinite(p.r_max)) {
    throw ParameterError("grid needs 0 < r_min < r_max < inf");
  }
  if (p.nodes < 3) throw ParameterError("grid needs at least 3 nodes");
  if (p.grading == Grading::Geometric) {
    return std::shared_ptr<const RadialGrid>(
        new RadialGrid(N, geometric_nodes(p.r_min, p.r_max, p.nodes), p.grading));
  }
  if (!(p.switch_radius > p.r_min && p.switch_radius < p.r_max)) {
    throw ParameterError("two_zone switch radius must lie in (r_min, r_max)");
  }
  if (!(p.inner_fraction > 0.0 && p.inner_fraction < 1.0)) {
    throw ParameterError("two_zone inner fraction must lie in (0, 1)");
  }
  const int inner = std::clamp(static_cast<int>(std::lround(p.nodes * p.inner_fraction)), 2,
                               p.nodes - 1);
  const int outer = p.nodes - inner;  // nodes strictly beyond switch_radius
  std::vector<double> nodes = geometric_nodes(p.r_min, p.switch_radius, inner);
  for (int j = 1; j <= outer; ++j) {
    const double t = static_cast<double>(j) / outer;
    nodes.push_back(p.switch_radius + (p.r_max - p.switch_radius) * t * t);
  }
  nodes.back() = p.r_max;
  return std::shared_ptr<const RadialGrid>(new RadialGrid(N, std::move(nodes), p.grading));
}

std::shared_ptr<const RadialGrid> RadialGrid::from_nodes(int N, std::vector<double> nodes) {
  check_dimension(N);
  if (nodes.size() < 3) throw ParameterError("grid needs at least 3 nodes");
  if (!(nodes.front() > 0.0)) throw ParameterError("grid nodes must be positive");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw ParameterError("grid nodes must be strictly increasing");
  }
  return std::shared_ptr<const RadialGrid>(new RadialGrid(N, std::move(nodes), Grading::Geometric));
}

double RadialGrid::max_ratio() const {
  double m = 1.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) m = std::max(m, nodes_[i + 1] / nodes_[i]);
  return m;
}

std::size_t RadialGrid::snap(double r) const {
  if (!(r > 0.0)) throw ParameterError("snap radius must be positive");
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), r);
  if (it == nodes_.begin()) return 0;
  if (it == nodes_.end()) return nodes_.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
  const std::size_t lo = hi - 1;
  return std::log(r / nodes_[lo]) <= std::log(nodes_[hi] / r) ? lo : hi;
}

CellRange RadialGrid::cells_of(const Region& region) const {
  CellRange range;
  std::size_t lo = 0, hi = nodes_.size() - 1;
  auto snap_checked = [&](double r, double& dist) {
    if (!(r >= nodes_.front() * (1 - 1e-12) && r <= nodes_.back() * (1 + 1e-12))) {
      throw ParameterError("region bound outside [r_min, r_max]");
    }
    const std::size_t idx = snap(r);
    dist = std::abs(nodes_[idx] - r);
    return idx;
  };
  switch (region.kind) {
    case Region::Kind::All:
      break;
    case Region::Kind::Ball:
      hi = snap_checked(region.hi, range.snap_hi);
      break;
    case Region::Kind::Complement:
      lo = snap_checked(region.lo, range.snap_lo);
      break;
    case Region::Kind::Annulus:
      lo = snap_checked(region.lo, range.snap_lo);
      hi = snap_checked(region.hi, range.snap_hi);
      break;
  }
  range.begin = lo;
  range.end = std::max(lo, hi);
  return range;
}

std::vector<double> RadialGrid::region_weights(const Region& region) const {
  const CellRange range = cells_of(region);
  std::vector<double> w(nodes_.size(), 0.0);
  for (std::size_t c = range.begin; c < range.end; ++c) {
    w[c] += left_[c];
    w[c + 1] += right_[c];
  }
  return w;
}

QuadratureResult quadrature(std::span<const double> values, const RadialGrid& grid,
                            const Region& region) {
  if (values.size() != grid.size()) throw GridMismatch("quadrature: value count != node count");
  const CellRange range = grid.cells_of(region);
  QuadratureResult out;
  out.snap_lo = range.snap_lo;
  out.snap_hi = range.snap_hi;
  out.empty = range.empty();
  const auto left = grid.left_weight();
  const auto right = grid.right_weight();
  double sum = 0.0;
  for (std::size_t c = range.begin; c < range.end; ++c) {
    sum += left[c] * values[c] + right[c] * values[c + 1];
  }
  out.value = grid.omega() * sum;
  return out;
}

QuadratureResult quadrature(const std::function<double(double)>& g, const RadialGrid& grid,
                            const Region& region) {
  static constexpr double kX[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                   0.8611363115940526};
  static constexpr double kW[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                   0.3478548451374538};
  const CellRange range = grid.cells_of(region);
  QuadratureResult out;
  out.snap_lo = range.snap_lo;
  out.snap_hi = range.snap_hi;
  out.empty = range.empty();
  const int N = grid.dimension();
  double sum = 0.0;
  for (std::size_t c = range.begin; c < range.end; ++c) {
    const double mid = grid.midpoint(c);
    const double half = 0.5 * grid.width(c);
    double cell = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double r = mid + half * kX[k];
      cell += kW[k] * g(r) * std::pow(r, N - 1);
    }
    sum += cell * half;
  }
  out.value = grid.omega() * sum;
  return out;
}

}  // namespace radialmp
