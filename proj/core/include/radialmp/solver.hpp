#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radialmp/exponents.hpp"
#include "radialmp/functional.hpp"
#include "radialmp/grid.hpp"
#include "radialmp/potential.hpp"
#include "radialmp/spaces.hpp"

namespace radialmp {

struct SolverOptions {
  int max_iter = 5000;
  /// Stop when ||X-gradient||_X <= residual_tol * ||u||_X.
  double residual_tol = 1e-6;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 60;
  int restarts = 5;
  std::uint64_t seed = 0;
  /// Newton refinement on I'(u) = 0 once descent has reached this relative residual.
  bool newton_polish = true;
  double newton_switch = 1e-3;
  int newton_max_iter = 30;
  /// Relative size of negative nodal values treated as discretization noise.
  double clamp_tolerance = 1e-12;
  /// Random points on the small sphere used for the alpha witness.
  int geometry_samples = 100;
};

struct SolveConfig {
  int N = 3;
  GridParams grid;
  PotentialSpec A, V, K;
  Nonlinearity nl;
  SolverOptions solver;
  /// Exponent data used to check q1 in I1 and q2 in I2 (warnings only).
  std::optional<ProblemParams> exponents;
  /// Initial guess; interpolated onto the solver grid when it lives elsewhere.
  std::optional<DiscreteRadialFunction> warm_start;
};

struct GeometryWitness {
  double rho = 0.0;
  double alpha_mp = 0.0;
  double escape_lambda = 0.0;
  double escape_energy = 0.0;
};

struct RestartSummary {
  std::uint64_t seed = 0;
  double energy = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
};

struct SolveResult {
  DiscreteRadialFunction u;
  EnergyBreakdown energy;
  double residual = 0.0;        // ||X-gradient||_X / ||u||_X
  double nehari_defect = 0.0;   // |I'(u)[u]| / ||u||_X^2
  double norm_X = 0.0;
  double min_before_clamp = 0.0;
  int iterations = 0;
  int newton_iterations = 0;
  GeometryWitness geometry;
  bool converged = false;
  std::vector<RestartSummary> restarts;
  std::vector<std::string> warnings;
};

struct EscapeDirection {
  DiscreteRadialFunction psi;
  double lambda = 0.0;
  double energy = 0.0;   // I(lambda psi)
  double norm_X = 0.0;   // ||lambda psi||_X
  double delta = 0.0;    // K > delta on a set of measure > delta inside (delta, 1/delta)
  int doublings = 0;
};

/// Smooth radial bump of the mountain-pass argument: equal to 1 on
/// [delta, 1/delta], zero outside (delta/2, 1 + 1/delta), C^1 cubic ramps.
double escape_bump(double r, double delta);

/// Finds delta by sampling K, builds the bump and doubles lambda from t0
/// until I(lambda psi) < 0 and below every value seen. Throws NumericalError
/// when 60 doublings do not suffice or the bump does not fit in the grid.
EscapeDirection build_escape_direction(const EnergyFunctional& I, double t0 = 1.0);

/// Dual norm of I'(u): ||x_gradient(u)||_X.
double ps_residual(const EnergyFunctional& I, const DiscreteRadialFunction& u);

SolveResult solve(const SolveConfig& config);

/// Runs descent and Newton refinement from a given start on an existing functional.
SolveResult solve_from(const EnergyFunctional& I, const DiscreteRadialFunction& start,
                       const SolverOptions& options);

struct GeometryRow {
  double rho = 0.0;
  double min_energy = 0.0;
  double floor_model = 0.0;  // rho^2/2 - c3 rho^q1 - c4 rho^q2
};

struct GeometryReport {
  std::vector<GeometryRow> rows;
  double c3 = 0.0, c4 = 0.0;
  std::optional<double> best_rho;  // largest rho with a positive empirical floor
  bool positive_floor = false;
  EscapeDirection escape;
  bool escape_negative = false;
  bool escape_beyond_rho = false;
  bool passed = false;
  std::vector<std::string> messages;
};

struct GeometryOptions {
  double rho_lo = 1e-3;
  double rho_hi = 1.0;
  int rho_per_decade = 4;
  int directions = 200;
  std::uint64_t seed = 0;
};

/// Empirical mountain-pass shape: min of I over random directions on spheres
/// of radius rho, and the escape direction.
GeometryReport verify_geometry(const EnergyFunctional& I, const GeometryOptions& options = {});
GeometryReport verify_geometry(const SolveConfig& config, const GeometryOptions& options = {});

}  // namespace radialmp
