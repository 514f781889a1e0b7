#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "radialmp/rational.hpp"

namespace radialmp {

struct PowerTerm {
  double c = 1.0;
  double e = 0.0;
};

/// c * r^e
struct PurePower {
  double c = 1.0;
  double e = 0.0;
};

/// min_i c_i r^{e_i}
struct MinPower {
  std::vector<PowerTerm> terms;
};

/// max_i c_i r^{e_i}
struct MaxPower {
  std::vector<PowerTerm> terms;
};

/// c * exp(k r)
struct ExpScaled {
  double c = 1.0;
  double k = 0.0;
};

/// Sampled potential, interpolated linearly in (log r, log v).
struct Tabulated {
  std::vector<std::pair<double, double>> points;  // (r, v), r strictly increasing, v > 0
  bool extrapolate = false;
};

using PotentialForm = std::variant<PurePower, MinPower, MaxPower, ExpScaled, Tabulated>;

enum class PotentialRole { A, V, K };

/// A radial potential A(r), V(r) or K(r) together with optionally declared
/// power-law exponents at the origin and at infinity.
class PotentialSpec {
 public:
  PotentialSpec() = default;
  explicit PotentialSpec(PotentialForm form, std::optional<double> declared_a0 = std::nullopt,
                         std::optional<double> declared_ainf = std::nullopt);

  static PotentialSpec pure_power(double c, double e);
  static PotentialSpec min_power(PowerTerm first, PowerTerm second);
  static PotentialSpec max_power(PowerTerm first, PowerTerm second);
  static PotentialSpec exp_scaled(double c, double k);
  static PotentialSpec tabulated(std::vector<std::pair<double, double>> points,
                                 bool extrapolate = false);

  const PotentialForm& form() const noexcept { return form_; }
  const std::optional<double>& declared_a0() const noexcept { return declared_a0_; }
  const std::optional<double>& declared_ainf() const noexcept { return declared_ainf_; }

  /// Value at r > 0. Throws DomainError for r <= 0 and ExtrapolationRefused
  /// for tabulated queries outside the sample hull.
  double operator()(double r) const;

  /// log of the value at r; -inf where the potential vanishes. Never
  /// overflows for exponential forms.
  double log_value(double r) const;

  /// Crossover radius of a two-term min/max form with distinct exponents.
  std::optional<double> crossover() const;

  /// True when the form is identically zero (V == 0 written as c = 0).
  bool is_zero() const;

  /// Checks the sign invariant of the form for the given role: A and K must
  /// be strictly positive, V nonnegative. Throws ParameterError.
  void validate(PotentialRole role) const;

  /// Short human-readable description, e.g. "min{1 r^2, 1 r^1.5}".
  std::string describe() const;

 private:
  PotentialForm form_ = PurePower{};
  std::optional<double> declared_a0_;
  std::optional<double> declared_ainf_;
};

double eval_potential(const PotentialSpec& spec, double r);

enum class AsymptoticEnd { Zero, Infinity };

std::string to_string(AsymptoticEnd end);

struct FitOptions {
  int points = 40;
  double start_zero = 1e-1;
  double start_infinity = 1e1;
  double decades_per_step = 0.25;
  double tolerance = 1e-3;
  /// Fitted slopes within snap_tolerance of a fraction with denominator at
  /// most snap_max_den are reported as that fraction.
  double snap_tolerance = 1e-9;
  std::int64_t snap_max_den = 16;
};

struct AsymptoticFit {
  double exponent = 0.0;
  std::optional<Rational> exact;
  double liminf = 0.0;
  double limsup = 0.0;
  double residual = 0.0;
};

/// Fits spec(r) ~ c r^e on a geometric ladder toward the requested end.
/// Throws FitFailed when the log-log residual exceeds the tolerance.
AsymptoticFit fit_asymptotics(const PotentialSpec& spec, AsymptoticEnd end,
                              const FitOptions& options = {});

struct HypothesisReport {
  bool passed = false;
  double a0_est = 0.0;
  double ainf_est = 0.0;
  std::optional<Rational> a0_exact;
  std::optional<Rational> ainf_exact;
  double liminf0 = 0.0;
  double limsup0 = 0.0;
  double liminf_inf = 0.0;
  double limsup_inf = 0.0;
  double s_required = 0.0;
  double s_used = 0.0;
  std::vector<std::string> messages;
};

/// Hypothesis on A: power-like at both ends with exponents in (2-N, 2].
HypothesisReport check_hypothesis_A(const PotentialSpec& A, int N, const FitOptions& options = {});

/// Hypothesis on V: nonnegative and locally integrable.
HypothesisReport check_hypothesis_V(const PotentialSpec& V);

/// Hypothesis on K: positive and locally L^s for s above the critical value.
HypothesisReport check_hypothesis_K(const PotentialSpec& K, int N, double a0, double ainf);

/// log of the integral of spec(r)^s over [lo, hi], computed with an adaptive
/// Gauss-Kronrod rule on a shifted log-domain integrand so that exponential
/// potentials do not overflow.
struct LogIntegral {
  double log_value = 0.0;
  double relative_error = 0.0;
  bool converged = false;
};
LogIntegral log_integral_of_power(const PotentialSpec& spec, double s, double lo, double hi);

struct RatioRegion {
  enum class Kind { Ball, Complement };
  Kind kind = Kind::Ball;
  double R = 1.0;

  static RatioRegion ball(double R) { return {Kind::Ball, R}; }
  static RatioRegion complement(double R) { return {Kind::Complement, R}; }
};

struct RatioOptions {
  double r_lo = 1e-8;
  double r_hi = 1e8;
  /// Sample density of the geometric ladder shared by every region.
  int points_per_decade = 1250;
  int divergence_decades = 3;
  double divergence_growth = 0.01;
};

struct RatioBound {
  double lambda = 0.0;  // +inf when judged unbounded
  bool infinite = false;
  double argmax = 0.0;
  std::string message;
};

/// Sampled ess-sup of K(r) / (r^alpha V(r)^beta) over a ball or complement.
RatioBound ratio_bound(const PotentialSpec& K, const PotentialSpec& V, double alpha, double beta,
                       const RatioRegion& region, const RatioOptions& options = {});

}  // namespace radialmp
