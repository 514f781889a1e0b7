#include "radialmp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "radialmp/error.hpp"
#include "radialmp/parallel.hpp"
#include "radialmp/random_functions.hpp"
#include "radialmp/tridiagonal.hpp"

namespace radialmp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * (3.0 - 2.0 * x);
}

std::vector<double> axpy(std::span<const double> u, double s, std::span<const double> g) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + s * g[i];
  return out;
}

void scale(std::vector<double>& u, double c) {
  for (double& v : u) v *= c;
}

double relative_residual(const EnergyFunctional& I, std::span<const double> u) {
  const double nu = I.form().norm(u);
  return nu > 0.0 ? I.ps_residual(u) / nu : kInf;
}

/// Lebesgue measure of {r in (delta, 1/delta) : K(r) > delta}, sampled on a log ladder.
double superlevel_measure(const PotentialSpec& K, double delta) {
  constexpr int kSamples = 4000;
  const double a = std::log(delta), b = -std::log(delta);
  double measure = 0.0;
  double prev = delta;
  for (int k = 1; k <= kSamples; ++k) {
    const double r = std::exp(a + (b - a) * k / kSamples);
    const double mid = std::sqrt(prev * r);
    if (K(mid) > delta) measure += r - prev;
    prev = r;
  }
  return measure;
}

struct Descent {
  std::vector<double> u;
  int iterations = 0;
  int newton_iterations = 0;
  std::string status;
};

/// Newton's method on I'(u) = 0 over the free nodes; keeps u unchanged when
/// it fails to reduce the residual or leaves the energy level.
void newton_polish(const EnergyFunctional& I, std::vector<double>& u, const SolverOptions& o,
                   Descent& d) {
  if (!I.nonlinearity().has_derivative()) return;
  const auto& gram = I.form().gram();
  const auto kw = I.k_weights();
  const std::size_t n = gram.size();
  const double e0 = I.energy(u).total;
  std::vector<double> best = u;
  double best_res = relative_residual(I, u);
  std::vector<double> cur = u;
  for (int it = 0; it < o.newton_max_iter; ++it) {
    std::vector<double> diag(gram.diag), lower(gram.off), upper(gram.off);
    for (std::size_t i = 0; i < n; ++i) diag[i] -= kw[i] * I.nonlinearity().df(cur[i]);
    std::vector<double> rhs = I.dual(cur);
    rhs.resize(n);
    for (double& v : rhs) v = -v;
    if (!solve_tridiagonal_pivoted(lower, diag, upper, rhs)) break;
    bool improved = false;
    double step = 1.0;
    for (int k = 0; k < 8; ++k, step *= 0.5) {
      std::vector<double> trial = cur;
      for (std::size_t i = 0; i < n; ++i) trial[i] += step * rhs[i];
      const double res = relative_residual(I, trial);
      if (res < best_res) {
        cur = std::move(trial);
        best_res = res;
        improved = true;
        break;
      }
    }
    ++d.newton_iterations;
    if (!improved) break;
    best = cur;
    if (best_res < 1e-3 * o.residual_tol) break;
  }
  const double e1 = I.energy(best).total;
  if (std::abs(e1 - e0) <= 1e-3 * std::max(std::abs(e0), 1e-300)) u = std::move(best);
}

Descent nehari_descent(const EnergyFunctional& I, std::vector<double> u, const SolverOptions& o) {
  Descent d;
  const XForm& X = I.form();
  try {
    scale(u, I.nehari_scale(u));
  } catch (const NoScaleError& e) {
    d.u = std::move(u);
    d.status = std::string("no Nehari scaling for the start: ") + e.what();
    return d;
  }
  double energy = I.energy(u).total;
  double step = 1.0;
  d.status = "max_iter";
  for (; d.iterations < o.max_iter; ++d.iterations) {
    const std::vector<double> g = I.x_gradient(u);
    const double gn = X.norm(g);
    const double un = X.norm(u);
    const double res = gn / un;
    if (res <= o.residual_tol) {
      d.status = "converged";
      break;
    }
    if (o.newton_polish && res <= o.newton_switch && I.nonlinearity().has_derivative()) {
      d.status = "newton";
      break;
    }
    step = std::min(1.0, 2.0 * step);
    bool accepted = false;
    for (int bt = 0; bt < o.max_backtracks; ++bt, step *= o.shrink) {
      std::vector<double> trial = axpy(u, -step, g);
      try {
        scale(trial, I.nehari_scale(trial));
      } catch (const NoScaleError&) {
        continue;
      }
      const double e = I.energy(trial).total;
      if (e <= energy - o.sufficient_decrease * step * gn * gn) {
        u = std::move(trial);
        energy = e;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      d.status = "line search stalled";
      break;
    }
  }
  if (d.status != "converged" && o.newton_polish) newton_polish(I, u, o, d);
  d.u = std::move(u);
  return d;
}

SolveResult finish(const EnergyFunctional& I, Descent d, const SolverOptions& o) {
  SolveResult r;
  std::vector<double>& u = d.u;
  double top = 0.0, mn = 0.0;
  for (double v : u) {
    top = std::max(top, std::abs(v));
    mn = std::min(mn, v);
  }
  r.min_before_clamp = mn;
  bool sign_ok = true;
  if (!I.nonlinearity().odd() && mn < 0.0) {
    if (mn >= -o.clamp_tolerance * top) {
      for (double& v : u) v = std::max(v, 0.0);
    } else {
      sign_ok = false;
      r.warnings.push_back("solution has negative values beyond the clamp tolerance");
    }
  }
  r.u = DiscreteRadialFunction(I.grid_ptr(), u);
  r.energy = I.energy(u);
  r.norm_X = I.form().norm(u);
  r.residual = r.norm_X > 0.0 ? I.ps_residual(u) / r.norm_X : kInf;
  r.nehari_defect = r.norm_X > 0.0 ? std::abs(I.derivative(u, u)) / (r.norm_X * r.norm_X) : kInf;
  r.iterations = d.iterations;
  r.newton_iterations = d.newton_iterations;
  r.converged = sign_ok && r.norm_X > 0.0 && r.residual <= o.residual_tol;
  RestartSummary s;
  s.energy = r.energy.total;
  s.residual = r.residual;
  s.iterations = d.iterations;
  s.converged = r.converged;
  s.status = r.converged ? "converged" : d.status;
  r.restarts.push_back(s);
  return r;
}

std::vector<DiscreteRadialFunction> unit_directions(const EnergyFunctional& I, int count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BumpOptions bo;
  bo.positive = false;
  std::vector<DiscreteRadialFunction> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(dirs.size()) < count) {
    DiscreteRadialFunction v = random_bumps(I.grid_ptr(), rng, bo);
    const double n = I.form().norm(v.values());
    if (!(n > 0.0)) continue;
    v *= 1.0 / n;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

double min_energy_on_sphere(const EnergyFunctional& I,
                            const std::vector<DiscreteRadialFunction>& dirs, double rho) {
  double best = kInf;
  std::vector<double> w;
  for (const auto& v : dirs) {
    w.assign(v.values().begin(), v.values().end());
    scale(w, rho);
    best = std::min(best, I.energy(w).total);
  }
  return best;
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

double escape_bump(double r, double delta) {
  const double inner = 0.5 * delta;
  const double outer = 1.0 + 1.0 / delta;
  if (r <= inner || r >= outer) return 0.0;
  if (r < delta) return smoothstep((r - inner) / (delta - inner));
  if (r <= 1.0 / delta) return 1.0;
  return smoothstep((outer - r) / (outer - 1.0 / delta));
}

EscapeDirection build_escape_direction(const EnergyFunctional& I, double t0) {
  const RadialGrid& g = I.grid();
  EscapeDirection out;
  bool found = false;
  for (int k = 1; k <= 60 && !found; ++k) {
    const double delta = std::ldexp(1.0, -k);
    if (superlevel_measure(I.K(), delta) > delta) {
      out.delta = delta;
      found = true;
    }
  }
  if (!found) throw NumericalError("K is not bounded below on any annulus (delta search failed)");
  if (0.5 * out.delta < g.r_min() || 1.0 + 1.0 / out.delta > g.r_max()) {
    throw NumericalError("escape bump support (" + std::to_string(0.5 * out.delta) + ", " +
                         std::to_string(1.0 + 1.0 / out.delta) + ") does not fit in the grid");
  }
  const double delta = out.delta;
  out.psi = DiscreteRadialFunction::sample(I.grid_ptr(), [delta](double r) { return escape_bump(r, delta); });
  if (!(t0 > 0.0)) throw ParameterError("escape ladder start must be positive");
  double lambda = t0;
  double seen = 0.0;  // I(0)
  std::vector<double> w;
  for (int k = 0; k <= 60; ++k, lambda *= 2.0) {
    w.assign(out.psi.values().begin(), out.psi.values().end());
    scale(w, lambda);
    const double e = I.energy(w).total;
    if (e < 0.0 && e < seen) {
      out.lambda = lambda;
      out.energy = e;
      out.norm_X = I.form().norm(w);
      out.doublings = k;
      return out;
    }
    seen = std::min(seen, e);
  }
  throw NumericalError("I(lambda psi) stayed nonnegative for 60 doublings (theta <= 2?)");
}

double ps_residual(const EnergyFunctional& I, const DiscreteRadialFunction& u) {
  return I.ps_residual(u.values());
}

SolveResult solve_from(const EnergyFunctional& I, const DiscreteRadialFunction& start,
                       const SolverOptions& options) {
  const DiscreteRadialFunction u0 =
      start.grid_ptr() == I.grid_ptr() ? start : start.interpolate_to(I.grid_ptr());
  std::vector<double> u(u0.values().begin(), u0.values().end());
  u.back() = 0.0;
  return finish(I, nehari_descent(I, std::move(u), options), options);
}

SolveResult solve(const SolveConfig& config) {
  const auto grid = RadialGrid::build(config.N, config.grid);
  const EnergyFunctional I(grid, config.A, config.V, config.K, config.nl);
  const SolverOptions& o = config.solver;
  if (!(o.residual_tol > 0.0) || o.max_iter < 1 || o.restarts < 1) {
    throw ParameterError("solver needs residual_tol > 0, max_iter >= 1, restarts >= 1");
  }

  std::vector<std::string> warnings;
  if (config.exponents && config.nl.kind() != NonlinearityKind::Zero) {
    const AdmissibleIntervals iv = admissible_intervals(*config.exponents);
    if (!iv.I1.contains(config.nl.q1())) {
      warnings.push_back("q1 = " + std::to_string(config.nl.q1()) + " is outside I1 = " + iv.I1.to_string());
    }
    if (!iv.I2.contains(config.nl.q2())) {
      warnings.push_back("q2 = " + std::to_string(config.nl.q2()) + " is outside I2 = " + iv.I2.to_string());
    }
  }

  if (config.nl.kind() == NonlinearityKind::Zero) {
    // The energy is the positive-definite quadratic form: u = 0 is its only critical point.
    SolveResult r;
    r.u = DiscreteRadialFunction::zero(grid);
    r.converged = true;
    r.warnings = warnings;
    r.warnings.push_back("f = 0: the only critical point is u = 0");
    RestartSummary s;
    s.converged = true;
    s.status = "trivial";
    r.restarts.push_back(s);
    return r;
  }

  const EscapeDirection escape = build_escape_direction(I);

  std::vector<SolveResult> runs;
  if (config.warm_start) {
    runs.push_back(solve_from(I, *config.warm_start, o));
    runs.back().restarts.front().seed = o.seed;
  } else {
    const std::size_t n = static_cast<std::size_t>(o.restarts);
    runs.resize(n);
    parallel_for(n, [&](std::size_t k) {
      const std::uint64_t seed = restart_seed(o.seed, k);
      std::mt19937_64 rng(seed);
      BumpOptions bo;
      bo.center_lo = escape.delta;
      bo.center_hi = 1.0 / escape.delta;
      bo.max_bumps = 3;
      const DiscreteRadialFunction bumps = random_bumps(grid, rng, bo);
      std::vector<double> start(grid->size());
      for (std::size_t i = 0; i < start.size(); ++i) {
        start[i] = escape.psi[i] * (0.25 + bumps[i]);
      }
      runs[k] = solve_from(I, DiscreteRadialFunction(grid, std::move(start)), o);
      runs[k].restarts.front().seed = seed;
    });
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    const SolveResult& a = runs[k];
    const SolveResult& b = runs[best];
    if (a.converged != b.converged) {
      if (a.converged) best = k;
      continue;
    }
    if (a.converged ? a.energy.total < b.energy.total : a.residual < b.residual) best = k;
  }
  SolveResult result = runs[best];
  result.restarts.clear();
  for (const SolveResult& r : runs) result.restarts.push_back(r.restarts.front());
  result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());
  if (!result.converged) result.warnings.push_back("no restart converged");

  result.geometry.rho = result.norm_X / 10.0;
  if (result.geometry.rho > 0.0) {
    const auto dirs = unit_directions(I, o.geometry_samples, restart_seed(o.seed, 1u << 20));
    result.geometry.alpha_mp = min_energy_on_sphere(I, dirs, result.geometry.rho);
  }
  result.geometry.escape_lambda = escape.lambda;
  result.geometry.escape_energy = escape.energy;
  return result;
}

GeometryReport verify_geometry(const EnergyFunctional& I, const GeometryOptions& o) {
  if (!(o.rho_lo > 0.0 && o.rho_hi > o.rho_lo) || o.rho_per_decade < 1 || o.directions < 1) {
    throw ParameterError("geometry ladder needs 0 < rho_lo < rho_hi and positive counts");
  }
  GeometryReport rep;
  const auto dirs = unit_directions(I, o.directions, o.seed);
  const int steps =
      std::max(1, static_cast<int>(std::lround(std::log10(o.rho_hi / o.rho_lo) * o.rho_per_decade)));
  const Nonlinearity& nl = I.nonlinearity();
  const bool has_f = nl.kind() != NonlinearityKind::Zero;
  double c = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double rho = o.rho_lo * std::pow(o.rho_hi / o.rho_lo, static_cast<double>(k) / steps);
    GeometryRow row;
    row.rho = rho;
    row.min_energy = min_energy_on_sphere(I, dirs, rho);
    if (row.min_energy > 0.0) {
      rep.positive_floor = true;
      rep.best_rho = rho;
    }
    if (has_f) {
      const double deficit = 0.5 * rho * rho - row.min_energy;
      c = std::max(c, deficit / (std::pow(rho, nl.q1()) + std::pow(rho, nl.q2())));
    }
    rep.rows.push_back(row);
  }
  rep.c3 = rep.c4 = c;
  for (GeometryRow& row : rep.rows) {
    row.floor_model = 0.5 * row.rho * row.rho;
    if (has_f) row.floor_model -= c * (std::pow(row.rho, nl.q1()) + std::pow(row.rho, nl.q2()));
  }
  if (!rep.positive_floor) rep.messages.push_back("no positive floor on the rho ladder (q <= 2?)");
  try {
    rep.escape = build_escape_direction(I);
    rep.escape_negative = rep.escape.energy < 0.0;
    rep.escape_beyond_rho = rep.best_rho && rep.escape.norm_X > *rep.best_rho;
  } catch (const std::exception& e) {
    rep.messages.push_back(std::string("escape direction: ") + e.what());
  }
  rep.passed = rep.positive_floor && rep.escape_negative && rep.escape_beyond_rho;
  return rep;
}

GeometryReport verify_geometry(const SolveConfig& config, const GeometryOptions& options) {
  const auto grid = RadialGrid::build(config.N, config.grid);
  const EnergyFunctional I(grid, config.A, config.V, config.K, config.nl);
  return verify_geometry(I, options);
}

}  // namespace radialmp
