#include "radialmp/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radialmp/error.hpp"
#include "radialmp/regression.hpp"

namespace radialmp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double power_value(double c, double e, double r) {
  if (c == 0.0) return 0.0;
  if (e == 0.0) return c;
  if (r < 1e-6 || r > 1e6) return c * std::exp(e * std::log(r));
  return c * std::pow(r, e);
}

double power_log(double c, double e, double r) {
  if (c <= 0.0) return -kInf;
  return std::log(c) + e * std::log(r);
}

void check_terms(const std::vector<PowerTerm>& terms, const char* name) {
  if (terms.empty()) throw ParameterError(std::string(name) + " needs at least one term");
}

double tabulated_log(const Tabulated& t, double r) {
  const auto& pts = t.points;
  const double lr = std::log(r);
  auto lerp = [&](std::size_t i) {
    const double x0 = std::log(pts[i].first), x1 = std::log(pts[i + 1].first);
    const double y0 = std::log(pts[i].second), y1 = std::log(pts[i + 1].second);
    return y0 + (y1 - y0) * (lr - x0) / (x1 - x0);
  };
  if (r < pts.front().first || r > pts.back().first) {
    if (!t.extrapolate) {
      std::ostringstream os;
      os << "tabulated potential queried at r=" << r << " outside [" << pts.front().first << ", "
         << pts.back().first << "]";
      throw ExtrapolationRefused(os.str());
    }
    return r < pts.front().first ? lerp(0) : lerp(pts.size() - 2);
  }
  const auto it = std::upper_bound(pts.begin(), pts.end(), r,
                                   [](double x, const auto& p) { return x < p.first; });
  std::size_t i = static_cast<std::size_t>(std::distance(pts.begin(), it));
  i = std::clamp<std::size_t>(i, 1, pts.size() - 1) - 1;
  if (r == pts[i].first) return std::log(pts[i].second);
  if (r == pts[i + 1].first) return std::log(pts[i + 1].second);
  return lerp(i);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

PotentialSpec::PotentialSpec(PotentialForm form, std::optional<double> declared_a0,
                             std::optional<double> declared_ainf)
    : form_(std::move(form)), declared_a0_(declared_a0), declared_ainf_(declared_ainf) {
  std::visit(Overloaded{
                 [](const PurePower&) {},
                 [](const MinPower& m) { check_terms(m.terms, "min_power"); },
                 [](const MaxPower& m) { check_terms(m.terms, "max_power"); },
                 [](const ExpScaled&) {},
                 [](const Tabulated& t) {
                   if (t.points.size() < 2) throw ParameterError("table needs at least 2 points");
                   for (std::size_t i = 0; i < t.points.size(); ++i) {
                     if (!(t.points[i].first > 0.0) || !(t.points[i].second > 0.0)) {
                       throw ParameterError("table points must have r > 0 and v > 0");
                     }
                     if (i > 0 && !(t.points[i].first > t.points[i - 1].first)) {
                       throw ParameterError("table radii must be strictly increasing");
                     }
                   }
                 },
             },
             form_);
}

PotentialSpec PotentialSpec::pure_power(double c, double e) { return PotentialSpec(PurePower{c, e}); }

PotentialSpec PotentialSpec::min_power(PowerTerm first, PowerTerm second) {
  return PotentialSpec(MinPower{{first, second}});
}

PotentialSpec PotentialSpec::max_power(PowerTerm first, PowerTerm second) {
  return PotentialSpec(MaxPower{{first, second}});
}

PotentialSpec PotentialSpec::exp_scaled(double c, double k) { return PotentialSpec(ExpScaled{c, k}); }

PotentialSpec PotentialSpec::tabulated(std::vector<std::pair<double, double>> points,
                                       bool extrapolate) {
  return PotentialSpec(Tabulated{std::move(points), extrapolate});
}

double PotentialSpec::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
  return std::visit(Overloaded{
                        [r](const PurePower& p) { return power_value(p.c, p.e, r); },
                        [r](const MinPower& m) {
                          double v = kInf;
                          for (const auto& t : m.terms) v = std::min(v, power_value(t.c, t.e, r));
                          return v;
                        },
                        [r](const MaxPower& m) {
                          double v = -kInf;
                          for (const auto& t : m.terms) v = std::max(v, power_value(t.c, t.e, r));
                          return v;
                        },
                        [r](const ExpScaled& x) { return x.c * std::exp(x.k * r); },
                        [r](const Tabulated& t) { return std::exp(tabulated_log(t, r)); },
                    },
                    form_);
}

double PotentialSpec::log_value(double r) const {
  if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
  return std::visit(Overloaded{
                        [r](const PurePower& p) { return power_log(p.c, p.e, r); },
                        [r](const MinPower& m) {
                          double v = kInf;
                          for (const auto& t : m.terms) v = std::min(v, power_log(t.c, t.e, r));
                          return v;
                        },
                        [r](const MaxPower& m) {
                          double v = -kInf;
                          for (const auto& t : m.terms) v = std::max(v, power_log(t.c, t.e, r));
                          return v;
                        },
                        [r](const ExpScaled& x) {
                          return x.c > 0.0 ? std::log(x.c) + x.k * r : -kInf;
                        },
                        [r](const Tabulated& t) { return tabulated_log(t, r); },
                    },
                    form_);
}

std::optional<double> PotentialSpec::crossover() const {
  auto two_term = [](const std::vector<PowerTerm>& t) -> std::optional<double> {
    if (t.size() != 2 || t[0].e == t[1].e || t[0].c <= 0.0 || t[1].c <= 0.0) return std::nullopt;
    return std::pow(t[1].c / t[0].c, 1.0 / (t[0].e - t[1].e));
  };
  if (const auto* m = std::get_if<MinPower>(&form_)) return two_term(m->terms);
  if (const auto* m = std::get_if<MaxPower>(&form_)) return two_term(m->terms);
  return std::nullopt;
}

bool PotentialSpec::is_zero() const {
  if (const auto* p = std::get_if<PurePower>(&form_)) return p->c == 0.0;
  if (const auto* x = std::get_if<ExpScaled>(&form_)) return x->c == 0.0;
  if (const auto* m = std::get_if<MinPower>(&form_)) {
    return std::any_of(m->terms.begin(), m->terms.end(), [](auto& t) { return t.c == 0.0; });
  }
  if (const auto* m = std::get_if<MaxPower>(&form_)) {
    return std::all_of(m->terms.begin(), m->terms.end(), [](auto& t) { return t.c == 0.0; });
  }
  return false;
}

void PotentialSpec::validate(PotentialRole role) const {
  const bool strict = role != PotentialRole::V;
  auto check_c = [&](double c) {
    if (!std::isfinite(c) || c < 0.0 || (strict && c == 0.0)) {
      throw ParameterError(std::string(strict ? "A and K" : "V") +
                           " coefficients must be " + (strict ? "positive" : "nonnegative") +
                           ", got " + fmt_double(c));
    }
  };
  std::visit(Overloaded{
                 [&](const PurePower& p) { check_c(p.c); },
                 [&](const MinPower& m) {
                   for (const auto& t : m.terms) check_c(t.c);
                 },
                 [&](const MaxPower& m) {
                   for (const auto& t : m.terms) check_c(t.c);
                 },
                 [&](const ExpScaled& x) { check_c(x.c); },
                 [&](const Tabulated&) {},
             },
             form_);
}

std::string PotentialSpec::describe() const {
  auto terms = [](const std::vector<PowerTerm>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ", ";
      s += fmt_double(ts[i].c) + " r^" + fmt_double(ts[i].e);
    }
    return s;
  };
  return std::visit(Overloaded{
                        [](const PurePower& p) { return fmt_double(p.c) + " r^" + fmt_double(p.e); },
                        [&](const MinPower& m) { return "min{" + terms(m.terms) + "}"; },
                        [&](const MaxPower& m) { return "max{" + terms(m.terms) + "}"; },
                        [](const ExpScaled& x) {
                          return fmt_double(x.c) + " exp(" + fmt_double(x.k) + " r)";
                        },
                        [](const Tabulated& t) {
                          return "table(" + std::to_string(t.points.size()) + " points)";
                        },
                    },
                    form_);
}

double eval_potential(const PotentialSpec& spec, double r) { return spec(r); }

std::string to_string(AsymptoticEnd end) { return end == AsymptoticEnd::Zero ? "zero" : "infinity"; }

AsymptoticFit fit_asymptotics(const PotentialSpec& spec, AsymptoticEnd end,
                              const FitOptions& options) {
  if (options.points < 4) throw ParameterError("asymptotic fit needs at least 4 ladder points");
  const double sign = end == AsymptoticEnd::Zero ? -1.0 : 1.0;
  const double start = end == AsymptoticEnd::Zero ? options.start_zero : options.start_infinity;

  // The fit and the liminf/limsup both use the half of the ladder nearest the end.
  const int first = options.points / 2;
  std::vector<double> xs, ys;
  for (int k = first; k < options.points; ++k) {
    const double r = start * std::pow(10.0, sign * options.decades_per_step * k);
    double lv = 0.0;
    try {
      lv = spec.log_value(r);
    } catch (const DomainError& e) {
      throw FitFailed(std::string("asymptotic fit failed: ") + e.what(), kInf);
    }
    if (!std::isfinite(lv)) {
      throw FitFailed("asymptotic fit failed: potential not finite and positive at r=" +
                          fmt_double(r),
                      kInf);
    }
    xs.push_back(std::log(r));
    ys.push_back(lv);
  }
  const LineFit line = fit_line(xs, ys);
  if (!(line.max_abs_residual <= options.tolerance)) {
    std::ostringstream os;
    os << "potential is not power-like toward " << to_string(end)
       << " (log-log residual " << line.max_abs_residual << " > " << options.tolerance << ")";
    throw FitFailed(os.str(), line.max_abs_residual);
  }

  AsymptoticFit fit;
  fit.residual = line.max_abs_residual;
  fit.exponent = line.slope;
  if (auto snapped = Rational::snap(line.slope, options.snap_max_den, options.snap_tolerance)) {
    fit.exact = snapped;
    fit.exponent = snapped->to_double();
  }
  fit.liminf = kInf;
  fit.limsup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ratio = std::exp(ys[i] - fit.exponent * xs[i]);
    fit.liminf = std::min(fit.liminf, ratio);
    fit.limsup = std::max(fit.limsup, ratio);
  }
  return fit;
}

namespace {

struct EndFit {
  std::optional<AsymptoticFit> fit;
  std::string error;
};

EndFit try_fit(const PotentialSpec& spec, AsymptoticEnd end, const FitOptions& options) {
  try {
    return {fit_asymptotics(spec, end, options), {}};
  } catch (const FitFailed& e) {
    return {std::nullopt, e.what()};
  }
}

}  // namespace

HypothesisReport check_hypothesis_A(const PotentialSpec& A, int N, const FitOptions& options) {
  if (N < 3) throw ParameterError("N must be at least 3");
  HypothesisReport rep;
  rep.passed = true;
  const double lower = 2.0 - N;
  const auto zero = try_fit(A, AsymptoticEnd::Zero, options);
  const auto inf = try_fit(A, AsymptoticEnd::Infinity, options);

  auto judge = [&](const EndFit& ef, const std::optional<double>& declared, const char* name,
                   double& est, std::optional<Rational>& exact, double& lo, double& hi) {
    if (!ef.fit) {
      rep.passed = false;
      est = std::numeric_limits<double>::quiet_NaN();
      lo = hi = std::numeric_limits<double>::quiet_NaN();
      rep.messages.push_back(std::string("[A] ") + name + ": " + ef.error);
      return;
    }
    est = ef.fit->exponent;
    exact = ef.fit->exact;
    lo = ef.fit->liminf;
    hi = ef.fit->limsup;
    if (!(est > lower && est <= 2.0)) {
      rep.passed = false;
      std::ostringstream os;
      os << "[A] " << name << " = " << est << " violates 2-N < " << name << " <= 2 (2-N = " << lower
         << ")";
      rep.messages.push_back(os.str());
    }
    if (!(lo > 0.0) || !std::isfinite(hi) || lo > hi) {
      rep.passed = false;
      std::ostringstream os;
      os << "[A] liminf/limsup of A/r^" << name << " not in (0, inf): [" << lo << ", " << hi << "]";
      rep.messages.push_back(os.str());
    }
    if (declared && std::abs(*declared - est) > 1e-6) {
      rep.passed = false;
      std::ostringstream os;
      os << "[A] declared " << name << " = " << *declared << " disagrees with fitted " << est;
      rep.messages.push_back(os.str());
    }
  };
  judge(zero, A.declared_a0(), "a0", rep.a0_est, rep.a0_exact, rep.liminf0, rep.limsup0);
  judge(inf, A.declared_ainf(), "ainf", rep.ainf_est, rep.ainf_exact, rep.liminf_inf,
        rep.limsup_inf);
  return rep;
}

LogIntegral log_integral_of_power(const PotentialSpec& spec, double s, double lo, double hi) {
  // Substitute r = e^t; integrand exp(s log v(e^t) + t - shift).
  const double t0 = std::log(lo), t1 = std::log(hi);
  auto g = [&](double t) { return s * spec.log_value(std::exp(t)) + t; };
  double shift = -kInf;
  constexpr int kScan = 2000;
  for (int i = 0; i <= kScan; ++i) shift = std::max(shift, g(t0 + (t1 - t0) * i / kScan));
  LogIntegral out;
  if (!std::isfinite(shift)) return out;
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [&](double t) { return std::exp(g(t) - shift); }, t0, t1, 15, 1e-10, &err);
  out.log_value = shift + std::log(value);
  out.relative_error = value > 0.0 ? err / value : kInf;
  out.converged = std::isfinite(out.log_value) && value > 0.0 && out.relative_error <= 1e-6;
  return out;
}

namespace {

// Compact intervals on which local integrability is probed.
constexpr std::pair<double, double> kCompacts[] = {{1e-3, 1.0}, {1.0, 1e3}};

void check_local_power_integrability(const PotentialSpec& spec, double s, const char* tag,
                                     HypothesisReport& rep) {
  for (const auto& [lo, hi] : kCompacts) {
    std::ostringstream os;
    try {
      const auto li = log_integral_of_power(spec, s, lo, hi);
      if (!li.converged) {
        rep.passed = false;
        os << tag << " integral of potential^" << s << " over [" << lo << ", " << hi
           << "] did not converge";
        rep.messages.push_back(os.str());
      }
    } catch (const DomainError& e) {
      rep.passed = false;
      os << tag << " " << e.what();
      rep.messages.push_back(os.str());
    }
  }
}

}  // namespace

HypothesisReport check_hypothesis_V(const PotentialSpec& V) {
  HypothesisReport rep;
  rep.passed = true;
  rep.s_required = rep.s_used = 1.0;
  for (int k = -44; k <= 44; ++k) {
    const double r = std::pow(10.0, 0.25 * k);
    double v = 0.0;
    try {
      v = V.log_value(r);
    } catch (const DomainError& e) {
      rep.passed = false;
      rep.messages.push_back(std::string("[V] ") + e.what());
      return rep;
    }
    if (std::isnan(v)) {
      rep.passed = false;
      rep.messages.push_back("[V] potential is not a number at r=" + fmt_double(r));
      return rep;
    }
  }
  if (V.is_zero()) return rep;
  check_local_power_integrability(V, 1.0, "[V]", rep);
  return rep;
}

HypothesisReport check_hypothesis_K(const PotentialSpec& K, int N, double a0, double ainf) {
  if (N < 3) throw ParameterError("N must be at least 3");
  const double lower = 2.0 - N;
  if (!(a0 > lower && a0 <= 2.0) || !(ainf > lower && ainf <= 2.0)) {
    throw ParameterError("a0 and ainf must lie in (2-N, 2]");
  }
  HypothesisReport rep;
  rep.passed = true;
  rep.a0_est = a0;
  rep.ainf_est = ainf;
  rep.s_required = std::max(2.0 * N / (N - a0 + 2.0), 2.0 * N / (N - ainf + 2.0));
  rep.s_used = rep.s_required + 1.0;
  for (int k = -44; k <= 44; ++k) {
    const double r = std::pow(10.0, 0.25 * k);
    try {
      if (!(K.log_value(r) > -kInf)) {
        rep.passed = false;
        rep.messages.push_back("[K] potential vanishes at r=" + fmt_double(r));
        break;
      }
    } catch (const DomainError&) {
      // Tabulated K outside its hull; integrability below reports it.
      break;
    }
  }
  check_local_power_integrability(K, rep.s_used, "[K]", rep);
  return rep;
}

RatioBound ratio_bound(const PotentialSpec& K, const PotentialSpec& V, double alpha, double beta,
                       const RatioRegion& region, const RatioOptions& options) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
  if (!(region.R > options.r_lo && region.R < options.r_hi)) {
    throw ParameterError("ratio region radius outside the sampling range");
  }
  const bool ball = region.kind == RatioRegion::Kind::Ball;
  const double step = 1.0 / options.points_per_decade;
  const double log_R = std::log10(region.R);

  RatioBound out;
  auto log_ratio = [&](double r) {
    const double lk = K.log_value(r);
    double lv_term = 0.0;
    if (beta > 0.0) {
      const double lv = V.log_value(r);
      if (!(lv > -kInf)) return std::numeric_limits<double>::quiet_NaN();
      lv_term = beta * lv;
    }
    return lk - alpha * std::log(r) - lv_term;
  };

  // Sample R itself, then the shared ladder 10^(j/ppd) moving toward the open end.
  std::vector<double> radii{region.R};
  if (ball) {
    const long jmax = static_cast<long>(std::ceil(log_R * options.points_per_decade)) - 1;
    const long jmin = static_cast<long>(std::ceil(std::log10(options.r_lo) * options.points_per_decade));
    for (long j = jmax; j >= jmin; --j) radii.push_back(std::pow(10.0, j * step));
  } else {
    const long jmin = static_cast<long>(std::floor(log_R * options.points_per_decade)) + 1;
    const long jmax = static_cast<long>(std::floor(std::log10(options.r_hi) * options.points_per_decade));
    for (long j = jmin; j <= jmax; ++j) radii.push_back(std::pow(10.0, j * step));
  }

  double best = -kInf;
  std::vector<double> decade_sup;  // running sup at the end of each decade from R
  int decade = 0;
  for (double r : radii) {
    const double lr = log_ratio(r);
    if (std::isnan(lr)) {
      out.lambda = kInf;
      out.infinite = true;
      out.argmax = r;
      out.message = "V vanishes at r=" + fmt_double(r) + " while beta > 0";
      return out;
    }
    // decades are closed on the far side, so a ladder ending exactly on a
    // power of ten does not open a final one-sample decade
    const int d = std::max(0, static_cast<int>(std::ceil(std::abs(std::log10(r) - log_R) - 1e-12)) - 1);
    while (decade < d) {
      decade_sup.push_back(best);
      ++decade;
    }
    if (lr > best) {
      best = lr;
      out.argmax = r;
    }
  }
  decade_sup.push_back(best);

  out.lambda = std::exp(best);
  const int n = static_cast<int>(decade_sup.size());
  const int need = options.divergence_decades;
  if (n > need) {
    bool growing = true;
    for (int i = n - need; i < n; ++i) {
      // log-domain growth > log(1 + growth)
      if (!(decade_sup[i] - decade_sup[i - 1] > std::log1p(options.divergence_growth))) {
        growing = false;
      }
    }
    if (growing || !std::isfinite(out.lambda)) {
      out.infinite = true;
      out.lambda = kInf;
      out.message = std::string("ratio grows without bound toward ") + (ball ? "0" : "infinity");
    }
  }
  return out;
}

}  // namespace radialmp
