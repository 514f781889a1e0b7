#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "radialmp/spaces.hpp"

namespace radialmp {

struct BumpOptions {
  int min_bumps = 1;
  int max_bumps = 4;
  bool positive = true;
  /// Bump centers are drawn log-uniformly from [center_lo, center_hi];
  /// zero means "derive from the grid" (one decade inside each end).
  double center_lo = 0.0;
  double center_hi = 0.0;
  double min_width = 0.2;  // in log r
  double max_width = 2.0;
  /// Values from the node nearest this radius outward are set to zero (0: only the last node).
  double support_radius = 0.0;
};

/// Sum of Gaussian bumps in log r, vanishing at r_max.
DiscreteRadialFunction random_bumps(std::shared_ptr<const RadialGrid> grid, std::mt19937_64& rng,
                                    const BumpOptions& options = {});

}  // namespace radialmp
