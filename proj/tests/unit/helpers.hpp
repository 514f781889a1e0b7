#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "radialmp/functional.hpp"
#include "radialmp/grid.hpp"
#include "radialmp/potential.hpp"
#include "radialmp/random_functions.hpp"
#include "radialmp/spaces.hpp"

namespace radialmp::testing {

struct Potentials {
  PotentialSpec A, V, K;
};

// The three worked examples.
inline Potentials example1() {
  return {PotentialSpec::min_power({1, 2}, {1, 1.5}), PotentialSpec::min_power({1, 0}, {1, -0.5}),
          PotentialSpec::max_power({1, 0.5}, {1, 1.5})};
}
inline Potentials example2() {
  return {PotentialSpec::max_power({1, -2}, {1, -3}), PotentialSpec::pure_power(1, -4),
          PotentialSpec::min_power({1, 0}, {1, -2})};
}
inline Potentials example3() {
  return {PotentialSpec::max_power({1, -2}, {1, -3}), PotentialSpec::exp_scaled(1, 2),
          PotentialSpec::exp_scaled(1, 1)};
}

inline Potentials constants() {
  return {PotentialSpec::pure_power(1, 0), PotentialSpec::pure_power(1, 0), PotentialSpec::pure_power(1, 0)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Random signed function vanishing at r_max.
inline DiscreteRadialFunction signed_random(std::shared_ptr<const RadialGrid> g, std::mt19937_64& rng) {
  BumpOptions o;
  o.positive = false;
  return random_bumps(std::move(g), rng, o);
}

}  // namespace radialmp::testing
