#include "radialmp/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "radialmp/error.hpp"
#include "radialmp/parallel.hpp"
#include "radialmp/random_functions.hpp"
#include "radialmp/regression.hpp"

namespace radialmp {
namespace {

struct Objective {
  std::vector<double> weights;  // omega_N w_i K(r_i) restricted to the region
  double q;

  double value(std::span<const double> u) const {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (weights[i] == 0.0 || u[i] == 0.0) continue;
      s += weights[i] * std::pow(std::abs(u[i]), q);
    }
    return s;
  }

  std::vector<double> gradient(std::span<const double> u) const {
    std::vector<double> d(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (weights[i] == 0.0 || u[i] == 0.0) continue;
      d[i] = q * weights[i] * std::pow(std::abs(u[i]), q - 1.0) * (u[i] > 0.0 ? 1.0 : -1.0);
    }
    return d;
  }
};

struct Ascent {
  std::vector<double> u;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

bool normalize(const XForm& X, std::vector<double>& u) {
  const double n = X.norm(u);
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  for (double& v : u) v /= n;
  return true;
}

Ascent ascend(const XForm& X, const Objective& phi, std::vector<double> u, const ProbeOptions& o) {
  Ascent a;
  u.back() = 0.0;
  if (!normalize(X, u)) return a;
  double value = phi.value(u);
  for (; a.iterations < o.max_iter; ++a.iterations) {
    std::vector<double> g = X.riesz(phi.gradient(u));
    if (!normalize(X, g)) {
      a.converged = true;  // Phi' vanishes: u carries no mass in the region
      break;
    }
    std::vector<double> cand = g;
    double cv = phi.value(cand);
    if (!(cv > value)) {
      bool improved = false;
      for (double s = 0.5; s > 1e-9; s *= 0.5) {
        cand = u;
        for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += s * g[i];
        if (!normalize(X, cand)) continue;
        cv = phi.value(cand);
        if (cv > value) {
          improved = true;
          break;
        }
      }
      if (!improved) {
        a.converged = true;
        break;
      }
    }
    const double rel = (cv - value) / cv;
    u = std::move(cand);
    value = cv;
    if (rel <= o.tolerance) {
      a.converged = true;
      ++a.iterations;
      break;
    }
  }
  a.u = std::move(u);
  a.value = value;
  return a;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

std::string to_string(ProbeEnd end) { return end == ProbeEnd::Zero ? "zero" : "infinity"; }

ProbeEnd probe_end_from_string(const std::string& name) {
  if (name == "zero") return ProbeEnd::Zero;
  if (name == "infinity" || name == "inf") return ProbeEnd::Infinity;
  throw ParameterError("probe end must be 'zero' or 'infinity', got '" + name + "'");
}

SupEstimate estimate_sup(const XForm& X, const PotentialSpec& K, double q, const Region& region,
                         const ProbeOptions& o,
                         const std::vector<DiscreteRadialFunction>& extra_starts) {
  if (!(q > 1.0)) throw ParameterError("probe exponent q must exceed 1");
  if (o.restarts < 0 || o.max_iter < 1 || !(o.tolerance > 0.0)) {
    throw ParameterError("probe needs restarts >= 0, max_iter >= 1, tolerance > 0");
  }
  const auto grid = X.grid_ptr();
  const RadialGrid& g = *grid;
  Objective phi{g.region_weights(region), q};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (phi.weights[i] != 0.0) phi.weights[i] *= g.omega() * K(g.node(i));
  }

  BumpOptions bo;
  bo.max_bumps = 2;
  switch (region.kind) {
    case Region::Kind::Ball:
      bo.center_lo = std::max(g.r_min() * 10.0, region.hi * 1e-2);
      bo.center_hi = region.hi;
      break;
    case Region::Kind::Complement:
      bo.center_lo = region.lo;
      bo.center_hi = std::min(region.lo * 1e2, g.r_max() / 10.0);
      break;
    case Region::Kind::Annulus:
      bo.center_lo = region.lo;
      bo.center_hi = region.hi;
      break;
    case Region::Kind::All:
      break;
  }

  const std::size_t n_random = static_cast<std::size_t>(o.restarts);
  const std::size_t n = n_random + extra_starts.size();
  std::vector<Ascent> runs(n);
  parallel_for(n, [&](std::size_t k) {
    std::vector<double> start;
    if (k < n_random) {
      std::mt19937_64 rng(mix_seed(o.seed, k));
      const DiscreteRadialFunction b = random_bumps(grid, rng, bo);
      start.assign(b.values().begin(), b.values().end());
    } else {
      const DiscreteRadialFunction& e = extra_starts[k - n_random];
      const DiscreteRadialFunction s = e.grid_ptr() == grid ? e : e.interpolate_to(grid);
      start.assign(s.values().begin(), s.values().end());
    }
    runs[k] = ascend(X, phi, std::move(start), o);
  });

  SupEstimate est;
  est.restarts_used = static_cast<int>(n);
  std::size_t best = 0;
  for (std::size_t k = 0; k < n; ++k) {
    est.per_restart.push_back(runs[k].value);
    if (runs[k].value > runs[best].value) best = k;
  }
  if (n == 0) return est;
  est.value = runs[best].value;
  est.converged = runs[best].converged;
  est.iterations = runs[best].iterations;
  if (!runs[best].u.empty()) est.maximizer = DiscreteRadialFunction(grid, runs[best].u);
  return est;
}

SupEstimate estimate_S0(const XForm& X, const PotentialSpec& K, double q, double R,
                        const ProbeOptions& options,
                        const std::vector<DiscreteRadialFunction>& extra_starts) {
  return estimate_sup(X, K, q, Region::ball(R), options, extra_starts);
}

SupEstimate estimate_Sinfty(const XForm& X, const PotentialSpec& K, double q, double R,
                            const ProbeOptions& options,
                            const std::vector<DiscreteRadialFunction>& extra_starts) {
  return estimate_sup(X, K, q, Region::complement(R), options, extra_starts);
}

ProbeResult decay_study(ProbeEnd end, double q, const std::vector<double>& radii,
                        const ProblemParams& params, const XForm& X, const PotentialSpec& K,
                        const ProbeOptions& options) {
  if (radii.size() < 3) throw ParameterError("decay study needs at least 3 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ParameterError("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ParameterError("radii must be strictly increasing");
  }
  ProbeResult res;
  res.end = end;
  res.q = q;
  res.radii = radii;
  res.estimates.assign(radii.size(), 0.0);
  res.converged_flags.assign(radii.size(), false);
  const AdmissibleIntervals iv = admissible_intervals(params);
  if (end == ProbeEnd::Zero) {
    res.predicted_delta = predicted_delta0(params, q);
    res.q_admissible = iv.I1.contains(q);
  } else {
    res.predicted_delta = -predicted_deltainf(params, q);
    res.q_admissible = iv.I2.contains(q);
  }

  std::vector<std::size_t> order(radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (end == ProbeEnd::Infinity) std::reverse(order.begin(), order.end());

  std::vector<DiscreteRadialFunction> seed_starts;
  for (std::size_t step = 0; step < order.size(); ++step) {
    const std::size_t i = order[step];
    ProbeOptions o = options;
    o.seed = mix_seed(options.seed, i + 1);
    const SupEstimate est = end == ProbeEnd::Zero
                                ? estimate_S0(X, K, q, radii[i], o, seed_starts)
                                : estimate_Sinfty(X, K, q, radii[i], o, seed_starts);
    res.estimates[i] = est.value;
    res.converged_flags[i] = est.converged;
    res.restarts_used = std::max(res.restarts_used, est.restarts_used);
    seed_starts.clear();
    if (est.maximizer.size() > 0) seed_starts.push_back(est.maximizer);
  }

  std::vector<double> x, y;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(res.estimates[i] > 0.0)) {
      res.fitted_slope = std::numeric_limits<double>::quiet_NaN();
      return res;
    }
    x.push_back(std::log(radii[i]));
    y.push_back(std::log(res.estimates[i]));
  }
  res.fitted_slope = fit_line(x, y).slope;
  return res;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ParameterError("log spacing needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace radialmp
