#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radialmp/potential.hpp"
#include "radialmp/spaces.hpp"

namespace radialmp {

enum class NonlinearityKind { MinPower, MinPowerOdd, PurePower, Custom, Zero };

std::string to_string(NonlinearityKind kind);

/// The nonlinearity f with its primitive F and the constants of the growth
/// hypotheses: |f(t)| <= M min{|t|^{q1-1}, |t|^{q2-1}}, 0 <= theta F(t) <= f(t) t,
/// F(t) >= m min{t^{q1}, t^{q2}}. Built-in forms vanish for t <= 0 unless odd.
class Nonlinearity {
 public:
  /// f(t) = min{t^{q1-1}, t^{q2-1}} for t >= 0, 0 for t < 0.
  static Nonlinearity min_power(double q1, double q2);
  /// Odd extension of min_power.
  static Nonlinearity min_power_odd(double q1, double q2);
  /// f(t) = t^{q-1} for t >= 0, 0 for t < 0.
  static Nonlinearity pure_power(double q);
  /// User-supplied f and F with the constants they are claimed to satisfy.
  /// df is optional; without it Newton refinement falls back to descent.
  static Nonlinearity custom(std::function<double(double)> f, std::function<double(double)> F,
                             double q1, double q2, double M, double theta, double m,
                             bool odd = false,
                             std::function<double(double)> df = nullptr);
  /// f = 0; turns the energy into the quadratic form (diagnostic mode).
  static Nonlinearity zero();

  NonlinearityKind kind() const noexcept { return kind_; }
  double q1() const noexcept { return q1_; }
  double q2() const noexcept { return q2_; }
  double M() const noexcept { return M_; }
  double theta() const noexcept { return theta_; }
  double m() const noexcept { return m_; }
  bool odd() const noexcept { return odd_; }
  bool has_derivative() const noexcept { return kind_ != NonlinearityKind::Custom || bool(df_); }

  double f(double t) const;
  double F(double t) const;
  /// f'(t); at the crossover t = 1 of min forms the right derivative.
  double df(double t) const;

  std::string describe() const;

 private:
  NonlinearityKind kind_ = NonlinearityKind::Zero;
  double q1_ = 0.0, q2_ = 0.0;
  double M_ = 0.0, theta_ = 0.0, m_ = 0.0;
  bool odd_ = false;
  std::function<double(double)> f_, F_, df_;
};

struct FHypothesisReport {
  bool passed = false;
  bool f1 = false, f2 = false, f3 = false, f4 = true;
  double M = 0.0;
  double theta = 0.0;
  double m = 0.0;
  std::optional<double> t0;
  bool oddness_checked = false;
  std::optional<double> witness;
  std::vector<std::string> messages;
};

/// Checks (f1)-(f4) on a log ladder over [1e-6, 1e6] and its negatives.
FHypothesisReport check_f_hypotheses(const Nonlinearity& nl);

struct EnergyBreakdown {
  double quadratic = 0.0;  // ||u||_X^2 / 2
  double potential = 0.0;  // int K F(u)
  double total = 0.0;
};

/// I(u) = ||u||_X^2 / 2 - int K F(u) discretized on one grid: exact quadratic
/// form of XForm and nodal (lumped) quadrature for the potential part, so that
/// derivative() is the exact derivative of energy().
class EnergyFunctional {
 public:
  EnergyFunctional(std::shared_ptr<const RadialGrid> grid, PotentialSpec A, PotentialSpec V,
                   PotentialSpec K, Nonlinearity nl);

  const RadialGrid& grid() const { return form_.grid(); }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const { return form_.grid_ptr(); }
  const XForm& form() const noexcept { return form_; }
  const Nonlinearity& nonlinearity() const noexcept { return nl_; }
  const PotentialSpec& A() const noexcept { return A_; }
  const PotentialSpec& V() const noexcept { return V_; }
  const PotentialSpec& K() const noexcept { return K_; }
  /// omega_N w_i K(r_i)
  std::span<const double> k_weights() const noexcept { return kw_; }

  EnergyBreakdown energy(std::span<const double> u) const;
  /// I'(u)[h]
  double derivative(std::span<const double> u, std::span<const double> h) const;
  /// Nodal dual vector d_i = I'(u)[e_i].
  std::vector<double> dual(std::span<const double> u) const;
  /// Riesz representative of I'(u) in X (last node pinned to zero).
  std::vector<double> x_gradient(std::span<const double> u) const;
  /// ||x_gradient(u)||_X, the dual norm of I'(u).
  double ps_residual(std::span<const double> u) const;
  /// lambda > 0 with I'(lambda u)[u] = 0. Throws NoScaleError when the ray
  /// never turns down (u_+ = 0 where K > 0 for the zero extension).
  double nehari_scale(std::span<const double> u) const;

  /// int K f(u) u and int K F(u)
  double kf_uu(std::span<const double> u) const;
  double kF(std::span<const double> u) const;

  EnergyBreakdown energy(const DiscreteRadialFunction& u) const { return energy(u.values()); }

 private:
  PotentialSpec A_, V_, K_;
  Nonlinearity nl_;
  XForm form_;
  std::vector<double> kw_;
};

EnergyBreakdown energy(const DiscreteRadialFunction& u, const PotentialSpec& A,
                       const PotentialSpec& V, const PotentialSpec& K, const Nonlinearity& nl);
double derivative(const DiscreteRadialFunction& u, const DiscreteRadialFunction& h,
                  const PotentialSpec& A, const PotentialSpec& V, const PotentialSpec& K,
                  const Nonlinearity& nl);
DiscreteRadialFunction x_gradient(const DiscreteRadialFunction& u, const PotentialSpec& A,
                                  const PotentialSpec& V, const PotentialSpec& K,
                                  const Nonlinearity& nl);
double nehari_scale(const DiscreteRadialFunction& u, const PotentialSpec& A,
                    const PotentialSpec& V, const PotentialSpec& K, const Nonlinearity& nl);

}  // namespace radialmp
