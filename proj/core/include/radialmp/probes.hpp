#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radialmp/exponents.hpp"
#include "radialmp/potential.hpp"
#include "radialmp/spaces.hpp"

namespace radialmp {

enum class ProbeEnd { Zero, Infinity };

std::string to_string(ProbeEnd end);
ProbeEnd probe_end_from_string(const std::string& name);

struct ProbeOptions {
  int restarts = 8;
  int max_iter = 2000;
  /// Ascent stops when the relative change of the objective drops below this.
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
};

struct SupEstimate {
  double value = 0.0;
  bool converged = false;
  int restarts_used = 0;
  int iterations = 0;  // of the best restart
  std::vector<double> per_restart;
  DiscreteRadialFunction maximizer;  // unit X-norm
};

/// Lower bound for sup { int_region K |u|^q : ||u||_X = 1 } by projected
/// ascent in the X metric: u <- normalize(G^{-1} Phi'(u)), with backtracking
/// toward the current point if a full step fails to increase Phi. Extra
/// starting points (e.g. the maximizer at a neighbouring radius) are tried in
/// addition to the random restarts.
SupEstimate estimate_sup(const XForm& X, const PotentialSpec& K, double q, const Region& region,
                         const ProbeOptions& options = {},
                         const std::vector<DiscreteRadialFunction>& extra_starts = {});

/// S_0(q, R): supremum over the ball B_R.
SupEstimate estimate_S0(const XForm& X, const PotentialSpec& K, double q, double R,
                        const ProbeOptions& options = {},
                        const std::vector<DiscreteRadialFunction>& extra_starts = {});

/// S_inf(q, R): supremum over the complement of B_R.
SupEstimate estimate_Sinfty(const XForm& X, const PotentialSpec& K, double q, double R,
                            const ProbeOptions& options = {},
                            const std::vector<DiscreteRadialFunction>& extra_starts = {});

struct ProbeResult {
  ProbeEnd end = ProbeEnd::Zero;
  double q = 0.0;
  std::vector<double> radii;
  std::vector<double> estimates;
  std::vector<bool> converged_flags;
  double fitted_slope = 0.0;
  /// Expected slope: +delta_0 at the zero end, -delta_inf at infinity.
  double predicted_delta = 0.0;
  bool q_admissible = false;
  int restarts_used = 0;
};

/// Estimates S at each radius and fits log S against log R. Radii are
/// processed from the smallest ball (zero end) or the largest radius
/// (infinity end) outward, each maximizer seeding the next radius, so that
/// the estimates are monotone in R. Throws ParameterError for fewer than 3
/// radii or radii that are not strictly increasing.
ProbeResult decay_study(ProbeEnd end, double q, const std::vector<double>& radii,
                        const ProblemParams& params, const XForm& X, const PotentialSpec& K,
                        const ProbeOptions& options = {});

/// lo:hi:count log-spaced radii.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace radialmp
