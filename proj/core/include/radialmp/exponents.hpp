#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "radialmp/error.hpp"
#include "radialmp/rational.hpp"

namespace radialmp {

/// A real parameter that may additionally be known exactly as a fraction.
struct ExactReal {
  double value = 0.0;
  std::optional<Rational> exact;

  ExactReal() = default;
  ExactReal(double v);    // NOLINT(google-explicit-constructor)
  ExactReal(Rational r);  // NOLINT(google-explicit-constructor)
  ExactReal(int v) : ExactReal(Rational(v)) {}  // NOLINT(google-explicit-constructor)
};

/// Dimension, asymptotic exponents of A, and the (alpha, beta) pairs of the
/// ratio bounds at the origin and at infinity.
struct ProblemParams {
  int N = 3;
  ExactReal a0, ainf;
  ExactReal alpha0, alphainf;
  ExactReal beta0, betainf;
  /// Local integrability exponent of K; defaults to sigma + 1.
  std::optional<ExactReal> s;

  /// Throws ParameterError unless N >= 3, a in (2-N, 2], beta in [0, 1].
  void validate() const;
  bool all_exact() const;
};

// ---------------------------------------------------------------------------
// Closed-form exponent formulas, usable with T = double or T = Rational.

template <class T>
struct BaseExponents {
  T p0, pinf, pstar, a, sigma;
};

template <class T>
void check_a_range(int N, const T& a, const char* name) {
  if (!(T(2 - N) < a) || T(2) < a) {
    throw ParameterError(std::string(name) + " must lie in (2-N, 2]");
  }
}

template <class T>
BaseExponents<T> base_exponents(int N, const T& a0, const T& ainf) {
  if (N < 3) throw ParameterError("N must be at least 3");
  check_a_range(N, a0, "a0");
  check_a_range(N, ainf, "ainf");
  const T n(N);
  BaseExponents<T> b;
  b.p0 = T(2) * n / (n + a0 - T(2));
  b.pinf = T(2) * n / (n + ainf - T(2));
  b.pstar = std::min(b.p0, b.pinf);
  b.a = std::max(a0, ainf);
  b.sigma = T(2) * n / (n - b.a + T(2));
  return b;
}

/// max{2b - 1 - N/2 - a b + a/2, -(1 - b) N}
template <class T>
T alpha_star(int N, const T& a, const T& beta) {
  check_a_range(N, a, "a");
  if (beta < T(0) || T(1) < beta) throw ParameterError("beta must lie in [0, 1]");
  const T n(N);
  const T first = T(2) * beta - T(1) - n / T(2) - a * beta + a / T(2);
  const T second = -(T(1) - beta) * n;
  return std::max(first, second);
}

/// 2 (alpha - 2 beta + N + a beta) / (N + a - 2)
template <class T>
T q_star(int N, const T& a, const T& alpha, const T& beta) {
  check_a_range(N, a, "a");
  const T n(N);
  return T(2) * (alpha - T(2) * beta + n + a * beta) / (n + a - T(2));
}

/// 2 (1 + 1/N - 1/s) - a/N, defined for s > sigma.
template <class T>
T q_tilde(int N, const T& a, const T& s) {
  check_a_range(N, a, "a");
  const T n(N);
  const T sigma = T(2) * n / (n - a + T(2));
  if (!(sigma < s)) throw ParameterError("q_tilde requires s > sigma");
  return T(2) * (T(1) + T(1) / n - T(1) / s) - a / n;
}

/// Unified decay exponent (N + a - 2)(q* - q)/2 of the embedding suprema;
/// the sign convention makes it positive inside the admissible interval at
/// the origin. At infinity pass (q* - q) negated, see decay_exponents().
template <class T>
T decay_rate(int N, const T& a, const T& qstar, const T& q) {
  return (T(N) + a - T(2)) * (qstar - q) / T(2);
}

// ---------------------------------------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 0.0;  // +inf for half-lines
  bool empty = false;
  std::optional<Rational> lo_exact;
  std::optional<Rational> hi_exact;  // absent for half-lines or inexact

  bool contains(double q) const { return !empty && q > lo && q < hi; }
  std::string to_string() const;
};

struct AdmissibleIntervals {
  Interval I1;
  Interval I2;
  Interval overlap;
};

AdmissibleIntervals admissible_intervals(const ProblemParams& p);

struct DecayExponents {
  double delta0 = 0.0;
  double deltainf = 0.0;
};

/// Decay exponents of S_0(q1, R) as R -> 0 and S_inf(q2, R) as R -> inf.
/// Throws ParameterError if q1 is not in I1 or q2 is not in I2.
DecayExponents decay_exponents(const ProblemParams& p, double q1, double q2);

/// Same closed forms without the membership check (may be <= 0).
double predicted_delta0(const ProblemParams& p, double q1);
double predicted_deltainf(const ProblemParams& p, double q2);

struct ExponentReport {
  int N = 3;
  double p0 = 0, pinf = 0, pstar = 0, a = 0, sigma = 0;
  double s = 0, qtilde = 0;
  double alphastar0 = 0, alphastarinf = 0;
  double qstar0 = 0, qstarinf = 0;
  double nu0 = 0, nuinf = 0;
  AdmissibleIntervals intervals;
  bool exact_mode = false;
  /// Exact values keyed by field name, present in exact mode.
  std::map<std::string, Rational> exact;

  double delta0(double q1) const;
  double deltainf(double q2) const;
};

ExponentReport exponent_report(const ProblemParams& p);

}  // namespace radialmp
