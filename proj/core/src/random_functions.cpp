#include "radialmp/random_functions.hpp"

#include <cmath>
#include <vector>

#include "radialmp/error.hpp"

namespace radialmp {

DiscreteRadialFunction random_bumps(std::shared_ptr<const RadialGrid> grid, std::mt19937_64& rng,
                                    const BumpOptions& o) {
  const RadialGrid& g = *grid;
  double lo = o.center_lo > 0.0 ? o.center_lo : g.r_min() * 10.0;
  double hi = o.center_hi > 0.0 ? o.center_hi : g.r_max() / 10.0;
  if (!(hi > lo)) {
    lo = g.r_min();
    hi = g.r_max();
  }
  if (o.min_bumps < 1 || o.max_bumps < o.min_bumps) throw ParameterError("bad bump count range");
  std::uniform_int_distribution<int> count(o.min_bumps, o.max_bumps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  struct Bump {
    double amp, center, width;
  };
  std::vector<Bump> bumps;
  for (int k = 0; k < n; ++k) {
    Bump b;
    b.amp = 0.2 + 0.8 * unit(rng);
    if (!o.positive && unit(rng) < 0.5) b.amp = -b.amp;
    b.center = std::log(lo) + (std::log(hi) - std::log(lo)) * unit(rng);
    b.width = o.min_width + (o.max_width - o.min_width) * unit(rng);
    bumps.push_back(b);
  }
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = std::log(g.node(i));
    double s = 0.0;
    for (const Bump& b : bumps) {
      const double z = (x - b.center) / b.width;
      s += b.amp * std::exp(-0.5 * z * z);
    }
    v[i] = s;
  }
  v.back() = 0.0;
  if (o.support_radius > 0.0) {
    // same snapping as Region bounds and the decay checks
    for (std::size_t i = g.snap(o.support_radius); i < g.size(); ++i) v[i] = 0.0;
  }
  return DiscreteRadialFunction(std::move(grid), std::move(v));
}

}  // namespace radialmp
