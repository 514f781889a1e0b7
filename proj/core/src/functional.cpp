#include "radialmp/functional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radialmp/error.hpp"

namespace radialmp {
namespace {

void check_exponent(double q, const char* name) {
  if (!(q > 2.0) || !std::isfinite(q)) {
    throw ParameterError(std::string(name) + " must be a finite exponent > 2");
  }
}

// min{t^{q1-1}, t^{q2-1}} for t >= 0, where qa = max and qb = min of (q1, q2).
double min_power_f(double qa, double qb, double t) {
  if (t == 0.0) return 0.0;
  return t < 1.0 ? std::pow(t, qa - 1.0) : std::pow(t, qb - 1.0);
}

double min_power_F(double qa, double qb, double t) {
  if (t == 0.0) return 0.0;
  if (t <= 1.0) return std::pow(t, qa) / qa;
  return 1.0 / qa + (std::pow(t, qb) - 1.0) / qb;
}

double min_power_df(double qa, double qb, double t) {
  if (t == 0.0) return 0.0;
  return t < 1.0 ? (qa - 1.0) * std::pow(t, qa - 2.0) : (qb - 1.0) * std::pow(t, qb - 2.0);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::MinPower:
      return "min_power";
    case NonlinearityKind::MinPowerOdd:
      return "min_power_odd";
    case NonlinearityKind::PurePower:
      return "pure_power";
    case NonlinearityKind::Custom:
      return "custom";
    case NonlinearityKind::Zero:
      return "zero";
  }
  return "unknown";
}

Nonlinearity Nonlinearity::min_power(double q1, double q2) {
  check_exponent(q1, "q1");
  check_exponent(q2, "q2");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::MinPower;
  nl.q1_ = q1;
  nl.q2_ = q2;
  nl.M_ = 1.0;
  nl.theta_ = std::min(q1, q2);
  nl.m_ = std::min(1.0 / q1, 1.0 / q2);
  return nl;
}

Nonlinearity Nonlinearity::min_power_odd(double q1, double q2) {
  Nonlinearity nl = min_power(q1, q2);
  nl.kind_ = NonlinearityKind::MinPowerOdd;
  nl.odd_ = true;
  return nl;
}

Nonlinearity Nonlinearity::pure_power(double q) {
  check_exponent(q, "q");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::PurePower;
  nl.q1_ = q;
  nl.q2_ = q;
  nl.M_ = 1.0;
  nl.theta_ = q;
  nl.m_ = 1.0 / q;
  return nl;
}

Nonlinearity Nonlinearity::custom(std::function<double(double)> f, std::function<double(double)> F,
                                  double q1, double q2, double M, double theta, double m, bool odd,
                                  std::function<double(double)> df) {
  if (!f || !F) throw ParameterError("custom nonlinearity needs both f and F");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::Custom;
  nl.q1_ = q1;
  nl.q2_ = q2;
  nl.M_ = M;
  nl.theta_ = theta;
  nl.m_ = m;
  nl.odd_ = odd;
  nl.f_ = std::move(f);
  nl.F_ = std::move(F);
  nl.df_ = std::move(df);
  return nl;
}

Nonlinearity Nonlinearity::zero() { return Nonlinearity{}; }

double Nonlinearity::f(double t) const {
  const double qa = std::max(q1_, q2_), qb = std::min(q1_, q2_);
  switch (kind_) {
    case NonlinearityKind::MinPower:
      return t > 0.0 ? min_power_f(qa, qb, t) : 0.0;
    case NonlinearityKind::MinPowerOdd:
      return t >= 0.0 ? min_power_f(qa, qb, t) : -min_power_f(qa, qb, -t);
    case NonlinearityKind::PurePower:
      return t > 0.0 ? std::pow(t, q1_ - 1.0) : 0.0;
    case NonlinearityKind::Custom:
      return f_(t);
    case NonlinearityKind::Zero:
      return 0.0;
  }
  return 0.0;
}

double Nonlinearity::F(double t) const {
  const double qa = std::max(q1_, q2_), qb = std::min(q1_, q2_);
  switch (kind_) {
    case NonlinearityKind::MinPower:
      return t > 0.0 ? min_power_F(qa, qb, t) : 0.0;
    case NonlinearityKind::MinPowerOdd:
      return min_power_F(qa, qb, std::abs(t));
    case NonlinearityKind::PurePower:
      return t > 0.0 ? std::pow(t, q1_) / q1_ : 0.0;
    case NonlinearityKind::Custom:
      return F_(t);
    case NonlinearityKind::Zero:
      return 0.0;
  }
  return 0.0;
}

double Nonlinearity::df(double t) const {
  const double qa = std::max(q1_, q2_), qb = std::min(q1_, q2_);
  switch (kind_) {
    case NonlinearityKind::MinPower:
      return t > 0.0 ? min_power_df(qa, qb, t) : 0.0;
    case NonlinearityKind::MinPowerOdd:
      return min_power_df(qa, qb, std::abs(t));
    case NonlinearityKind::PurePower:
      return t > 0.0 ? (q1_ - 1.0) * std::pow(t, q1_ - 2.0) : 0.0;
    case NonlinearityKind::Custom:
      if (!df_) throw ParameterError("custom nonlinearity has no derivative");
      return df_(t);
    case NonlinearityKind::Zero:
      return 0.0;
  }
  return 0.0;
}

std::string Nonlinearity::describe() const {
  switch (kind_) {
    case NonlinearityKind::MinPower:
    case NonlinearityKind::MinPowerOdd:
      return to_string(kind_) + "(" + fmt_double(q1_) + ", " + fmt_double(q2_) + ")";
    case NonlinearityKind::PurePower:
      return "pure_power(" + fmt_double(q1_) + ")";
    case NonlinearityKind::Custom:
      return "custom";
    case NonlinearityKind::Zero:
      return "zero";
  }
  return "unknown";
}

FHypothesisReport check_f_hypotheses(const Nonlinearity& nl) {
  constexpr double kRel = 1e-12;
  FHypothesisReport rep;
  rep.M = nl.M();
  rep.theta = nl.theta();
  rep.m = nl.m();
  rep.f1 = rep.f2 = rep.f3 = true;
  rep.oddness_checked = nl.odd();

  auto fail = [&](bool& flag, const std::string& msg, double t) {
    if (flag) {
      rep.messages.push_back(msg + " at t = " + fmt_double(t));
      if (!rep.witness) rep.witness = t;
    }
    flag = false;
  };

  const bool powers_ok = nl.q1() > 2.0 && nl.q2() > 2.0;
  if (!powers_ok) {
    rep.f1 = false;
    rep.messages.push_back("(f1) needs q1, q2 > 2");
  }
  if (!(nl.theta() > 2.0)) {
    rep.f2 = false;
    rep.messages.push_back("(f2) needs theta > 2, got " + fmt_double(nl.theta()));
  }

  constexpr int kSteps = 240;
  for (int k = 0; k <= kSteps; ++k) {
    const double s = std::pow(10.0, -6.0 + 12.0 * k / kSteps);
    for (double t : {s, -s}) {
      const double f = nl.f(t), F = nl.F(t);
      if (!std::isfinite(f) || !std::isfinite(F)) {
        fail(rep.f1, "f or F not finite", t);
        continue;
      }
      const double a = std::abs(t);
      if (powers_ok) {
        const double bound = nl.M() * std::min(std::pow(a, nl.q1() - 1.0), std::pow(a, nl.q2() - 1.0));
        if (std::abs(f) > bound * (1.0 + kRel)) fail(rep.f1, "(f1) |f(t)| exceeds the bound", t);
      }
      const double tF = nl.theta() * F;
      const double ft = f * t;
      if (tF < -kRel * std::abs(tF) || tF > ft + kRel * std::abs(ft)) {
        fail(rep.f2, "(f2) 0 <= theta F(t) <= f(t) t fails", t);
      }
      if (t > 0.0) {
        if (!rep.t0 && F > 0.0) rep.t0 = t;
        if (powers_ok) {
          const double lower = nl.m() * std::min(std::pow(t, nl.q1()), std::pow(t, nl.q2()));
          if (F < lower * (1.0 - kRel)) fail(rep.f3, "(f3) F(t) below m min{t^q1, t^q2}", t);
        }
      }
      if (nl.odd() && t > 0.0) {
        const double fn = nl.f(-t);
        if (std::abs(fn + f) > kRel * std::abs(f)) fail(rep.f4, "(f4) f is not odd", t);
      }
    }
  }
  if (!rep.t0) {
    rep.f2 = false;
    rep.messages.push_back("(f2) no t0 with F(t0) > 0");
  }
  rep.passed = rep.f1 && rep.f2 && rep.f3 && rep.f4;
  return rep;
}

EnergyFunctional::EnergyFunctional(std::shared_ptr<const RadialGrid> grid, PotentialSpec A,
                                   PotentialSpec V, PotentialSpec K, Nonlinearity nl)
    : A_(std::move(A)), V_(std::move(V)), K_(std::move(K)), nl_(std::move(nl)),
      form_(std::move(grid), A_, V_) {
  const RadialGrid& g = form_.grid();
  const auto w = g.weights();
  kw_.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = K_(g.node(i));
    if (!std::isfinite(k)) throw NumericalError("K is not finite on the grid; reduce r_max");
    kw_[i] = g.omega() * w[i] * k;
  }
}

double EnergyFunctional::kF(std::span<const double> u) const {
  double s = 0.0;
  for (std::size_t i = 0; i < kw_.size(); ++i) s += kw_[i] * nl_.F(u[i]);
  return s;
}

double EnergyFunctional::kf_uu(std::span<const double> u) const {
  double s = 0.0;
  for (std::size_t i = 0; i < kw_.size(); ++i) s += kw_[i] * nl_.f(u[i]) * u[i];
  return s;
}

EnergyBreakdown EnergyFunctional::energy(std::span<const double> u) const {
  EnergyBreakdown e;
  e.quadratic = 0.5 * (form_.a_energy(u) + form_.v_energy(u));
  e.potential = kF(u);
  e.total = e.quadratic - e.potential;
  return e;
}

double EnergyFunctional::derivative(std::span<const double> u, std::span<const double> h) const {
  double s = form_.inner(u, h);
  for (std::size_t i = 0; i < kw_.size(); ++i) s -= kw_[i] * nl_.f(u[i]) * h[i];
  return s;
}

std::vector<double> EnergyFunctional::dual(std::span<const double> u) const {
  std::vector<double> d(u.size());
  form_.apply(u, d);
  for (std::size_t i = 0; i < kw_.size(); ++i) d[i] -= kw_[i] * nl_.f(u[i]);
  return d;
}

std::vector<double> EnergyFunctional::x_gradient(std::span<const double> u) const {
  return form_.riesz(dual(u));
}

double EnergyFunctional::ps_residual(std::span<const double> u) const {
  return form_.norm(x_gradient(u));
}

double EnergyFunctional::nehari_scale(std::span<const double> u) const {
  const double nx2 = form_.a_energy(u) + form_.v_energy(u);
  if (!(nx2 > 0.0)) throw NoScaleError("u = 0 has no Nehari scaling");
  if (nl_.kind() == NonlinearityKind::Zero) throw NoScaleError("f = 0: the ray never turns down");

  if (nl_.kind() == NonlinearityKind::PurePower) {
    const double kq = kf_uu(u);
    if (!(kq > 0.0)) throw NoScaleError("u_+ vanishes where K > 0");
    return std::pow(nx2 / kq, 1.0 / (nl_.q1() - 2.0));
  }
  if (!nl_.odd() && nl_.kind() != NonlinearityKind::Custom) {
    bool any = false;
    for (std::size_t i = 0; i < kw_.size() && !any; ++i) any = u[i] > 0.0 && kw_[i] > 0.0;
    if (!any) throw NoScaleError("u_+ vanishes where K > 0");
  }

  // I'(lambda u)[u] / lambda = ||u||^2 - int K f(lambda u) u / lambda; decreasing in
  // lambda when f(t)/t is nondecreasing.
  auto psi = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < kw_.size(); ++i) {
      if (kw_[i] == 0.0 || u[i] == 0.0) continue;
      s += kw_[i] * nl_.f(lambda * u[i]) * u[i];
    }
    return nx2 - s / lambda;
  };
  double lo = 1.0, hi = 1.0;
  if (psi(1.0) > 0.0) {
    int k = 0;
    do {
      lo = hi;
      hi *= 2.0;
      if (++k > 1000) throw NoScaleError("I'(lambda u)[u] stays positive: no Nehari scaling");
    } while (psi(hi) > 0.0);
  } else {
    int k = 0;
    do {
      hi = lo;
      lo *= 0.5;
      if (++k > 1000) throw NumericalError("I'(lambda u)[u] stays negative as lambda -> 0");
    } while (psi(lo) <= 0.0);
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (psi(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EnergyBreakdown energy(const DiscreteRadialFunction& u, const PotentialSpec& A,
                       const PotentialSpec& V, const PotentialSpec& K, const Nonlinearity& nl) {
  return EnergyFunctional(u.grid_ptr(), A, V, K, nl).energy(u.values());
}

double derivative(const DiscreteRadialFunction& u, const DiscreteRadialFunction& h,
                  const PotentialSpec& A, const PotentialSpec& V, const PotentialSpec& K,
                  const Nonlinearity& nl) {
  require_same_grid(u, h);
  return EnergyFunctional(u.grid_ptr(), A, V, K, nl).derivative(u.values(), h.values());
}

DiscreteRadialFunction x_gradient(const DiscreteRadialFunction& u, const PotentialSpec& A,
                                  const PotentialSpec& V, const PotentialSpec& K,
                                  const Nonlinearity& nl) {
  EnergyFunctional I(u.grid_ptr(), A, V, K, nl);
  return DiscreteRadialFunction(u.grid_ptr(), I.x_gradient(u.values()));
}

double nehari_scale(const DiscreteRadialFunction& u, const PotentialSpec& A,
                    const PotentialSpec& V, const PotentialSpec& K, const Nonlinearity& nl) {
  return EnergyFunctional(u.grid_ptr(), A, V, K, nl).nehari_scale(u.values());
}

}  // namespace radialmp
