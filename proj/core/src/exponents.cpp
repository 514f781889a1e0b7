#include "radialmp/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace radialmp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class T>
struct IntervalsT {
  T I1_lo, I1_hi, I2_lo;
  bool I1_empty;
};

template <class T>
T value_of(const ExactReal& x);

template <>
double value_of<double>(const ExactReal& x) {
  return x.value;
}

template <>
Rational value_of<Rational>(const ExactReal& x) {
  return *x.exact;
}

template <class T>
IntervalsT<T> compute_intervals(const ProblemParams& p) {
  const T a0 = value_of<T>(p.a0), ainf = value_of<T>(p.ainf);
  const T alpha0 = value_of<T>(p.alpha0), alphainf = value_of<T>(p.alphainf);
  const T beta0 = value_of<T>(p.beta0), betainf = value_of<T>(p.betainf);
  IntervalsT<T> out;
  out.I1_lo = std::max(T(1), T(2) * beta0);
  out.I1_hi = q_star(p.N, a0, alpha0, beta0);
  out.I1_empty = !(alpha_star(p.N, a0, beta0) < alpha0) || !(out.I1_lo < out.I1_hi);
  out.I2_lo = std::max({T(1), T(2) * betainf, q_star(p.N, ainf, alphainf, betainf)});
  return out;
}

template <class T>
std::optional<Rational> maybe_exact(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v;
  } else {
    return std::nullopt;
  }
}

template <class T>
AdmissibleIntervals to_intervals(const IntervalsT<T>& in) {
  AdmissibleIntervals out;
  out.I1 = {to_double(in.I1_lo), to_double(in.I1_hi), in.I1_empty, maybe_exact(in.I1_lo),
            maybe_exact(in.I1_hi)};
  out.I2 = {to_double(in.I2_lo), kInf, false, maybe_exact(in.I2_lo), std::nullopt};
  const T lo = std::max(in.I1_lo, in.I2_lo);
  out.overlap = {to_double(lo), to_double(in.I1_hi), in.I1_empty || !(lo < in.I1_hi),
                 maybe_exact(lo), maybe_exact(in.I1_hi)};
  return out;
}

template <class T>
void fill_report(const ProblemParams& p, ExponentReport& rep) {
  const T a0 = value_of<T>(p.a0), ainf = value_of<T>(p.ainf);
  const T alpha0 = value_of<T>(p.alpha0), alphainf = value_of<T>(p.alphainf);
  const T beta0 = value_of<T>(p.beta0), betainf = value_of<T>(p.betainf);
  const auto base = base_exponents(p.N, a0, ainf);
  const T s = p.s ? value_of<T>(*p.s) : base.sigma + T(1);
  const T qt = q_tilde(p.N, base.a, s);
  const T as0 = alpha_star(p.N, a0, beta0), asinf = alpha_star(p.N, ainf, betainf);
  const T qs0 = q_star(p.N, a0, alpha0, beta0), qsinf = q_star(p.N, ainf, alphainf, betainf);
  const T nu0 = (T(p.N) + a0 - T(2)) / T(2), nuinf = (T(p.N) + ainf - T(2)) / T(2);

  rep.p0 = to_double(base.p0);
  rep.pinf = to_double(base.pinf);
  rep.pstar = to_double(base.pstar);
  rep.a = to_double(base.a);
  rep.sigma = to_double(base.sigma);
  rep.s = to_double(s);
  rep.qtilde = to_double(qt);
  rep.alphastar0 = to_double(as0);
  rep.alphastarinf = to_double(asinf);
  rep.qstar0 = to_double(qs0);
  rep.qstarinf = to_double(qsinf);
  rep.nu0 = to_double(nu0);
  rep.nuinf = to_double(nuinf);
  rep.intervals = to_intervals(compute_intervals<T>(p));
  if constexpr (std::is_same_v<T, Rational>) {
    rep.exact = {{"p0", base.p0},       {"pinf", base.pinf},     {"pstar", base.pstar},
                 {"a", base.a},         {"sigma", base.sigma},   {"s", s},
                 {"qtilde", qt},        {"alphastar0", as0},     {"alphastarinf", asinf},
                 {"qstar0", qs0},       {"qstarinf", qsinf},     {"nu0", nu0},
                 {"nuinf", nuinf}};
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ExactReal::ExactReal(double v) : value(v), exact(Rational::from_double(v)) {}

ExactReal::ExactReal(Rational r) : value(r.to_double()), exact(r) {}

void ProblemParams::validate() const {
  if (N < 3) throw ParameterError("N must be at least 3");
  const double lower = 2.0 - N;
  if (!(a0.value > lower && a0.value <= 2.0)) throw ParameterError("a0 must lie in (2-N, 2]");
  if (!(ainf.value > lower && ainf.value <= 2.0)) throw ParameterError("ainf must lie in (2-N, 2]");
  if (!(beta0.value >= 0.0 && beta0.value <= 1.0)) throw ParameterError("beta0 must lie in [0, 1]");
  if (!(betainf.value >= 0.0 && betainf.value <= 1.0)) {
    throw ParameterError("betainf must lie in [0, 1]");
  }
  if (!std::isfinite(alpha0.value) || !std::isfinite(alphainf.value)) {
    throw ParameterError("alpha0 and alphainf must be finite");
  }
}

bool ProblemParams::all_exact() const {
  return a0.exact && ainf.exact && alpha0.exact && alphainf.exact && beta0.exact &&
         betainf.exact && (!s || s->exact);
}

std::string Interval::to_string() const {
  if (empty) return "empty";
  auto side = [](double v, const std::optional<Rational>& ex) {
    return ex ? ex->to_string() : fmt(v);
  };
  return "(" + side(lo, lo_exact) + ", " + (std::isinf(hi) ? "inf" : side(hi, hi_exact)) + ")";
}

AdmissibleIntervals admissible_intervals(const ProblemParams& p) {
  p.validate();
  if (p.all_exact()) return to_intervals(compute_intervals<Rational>(p));
  return to_intervals(compute_intervals<double>(p));
}

double predicted_delta0(const ProblemParams& p, double q1) {
  const double qs = q_star(p.N, p.a0.value, p.alpha0.value, p.beta0.value);
  return decay_rate(p.N, p.a0.value, qs, q1);
}

double predicted_deltainf(const ProblemParams& p, double q2) {
  const double qs = q_star(p.N, p.ainf.value, p.alphainf.value, p.betainf.value);
  return -decay_rate(p.N, p.ainf.value, qs, q2);
}

DecayExponents decay_exponents(const ProblemParams& p, double q1, double q2) {
  const auto iv = admissible_intervals(p);
  if (!iv.I1.contains(q1)) throw ParameterError("q1 = " + fmt(q1) + " is not in I1 = " + iv.I1.to_string());
  if (!iv.I2.contains(q2)) throw ParameterError("q2 = " + fmt(q2) + " is not in I2 = " + iv.I2.to_string());
  return {predicted_delta0(p, q1), predicted_deltainf(p, q2)};
}

double ExponentReport::delta0(double q1) const { return (2.0 * nu0) * (qstar0 - q1) / 2.0; }

double ExponentReport::deltainf(double q2) const { return (2.0 * nuinf) * (q2 - qstarinf) / 2.0; }

ExponentReport exponent_report(const ProblemParams& p) {
  p.validate();
  ExponentReport rep;
  rep.N = p.N;
  rep.exact_mode = p.all_exact();
  if (rep.exact_mode) {
    fill_report<Rational>(p, rep);
  } else {
    fill_report<double>(p, rep);
  }
  return rep;
}

}  // namespace radialmp
