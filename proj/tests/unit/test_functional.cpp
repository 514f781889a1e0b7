#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "radialmp/error.hpp"
#include "radialmp/functional.hpp"

using namespace radialmp;
namespace rt = radialmp::testing;
using radialmp::testing::rel_err;

namespace {

EnergyFunctional example2_functional(std::shared_ptr<const RadialGrid> g, Nonlinearity nl) {
  const auto p = rt::example2();
  return EnergyFunctional(std::move(g), p.A, p.V, p.K, std::move(nl));
}

DiscreteRadialFunction positive_random(std::shared_ptr<const RadialGrid> g, std::mt19937_64& rng) {
  return random_bumps(std::move(g), rng);
}

}  // namespace

TEST(Nonlinearity, MinPowerValues) {
  const Nonlinearity nl = Nonlinearity::min_power(3, 5);
  EXPECT_DOUBLE_EQ(nl.f(0.5), 1.0 / 16);
  EXPECT_DOUBLE_EQ(nl.f(2.0), 4.0);
  EXPECT_EQ(nl.f(-1.0), 0.0);
  EXPECT_EQ(nl.F(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(nl.F(0.5), std::pow(0.5, 5) / 5);
  EXPECT_DOUBLE_EQ(nl.F(2.0), 0.2 + 7.0 / 3.0);
  const Nonlinearity odd = Nonlinearity::min_power_odd(3, 5);
  EXPECT_DOUBLE_EQ(odd.f(-2.0), -4.0);
  EXPECT_DOUBLE_EQ(odd.F(-2.0), odd.F(2.0));
}

TEST(Nonlinearity, PrimitiveMatchesIntegralOfF) {
  for (const Nonlinearity& nl : {Nonlinearity::min_power(3, 5), Nonlinearity::min_power(2.2, 4),
                                 Nonlinearity::pure_power(5)}) {
    // Simpson on [0, t]
    for (double t : {0.3, 1.0, 2.5}) {
      const int n = 2000;
      double s = nl.f(0) + nl.f(t);
      for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * nl.f(t * k / n);
      EXPECT_LT(rel_err(nl.F(t), s * t / (3 * n)), 1e-7) << nl.describe() << " t=" << t;
    }
  }
}

TEST(Nonlinearity, DerivativeMatchesDifferenceQuotient) {
  const Nonlinearity nl = Nonlinearity::min_power(2.2, 4);
  for (double t : {0.1, 0.7, 1.5, 4.0}) {
    const double h = 1e-6 * t;
    EXPECT_LT(rel_err(nl.df(t), (nl.f(t + h) - nl.f(t - h)) / (2 * h)), 1e-6);
  }
}

TEST(Nonlinearity, InvalidExponents) {
  EXPECT_THROW(Nonlinearity::min_power(2.0, 4), ParameterError);
  EXPECT_THROW(Nonlinearity::pure_power(1.5), ParameterError);
}

TEST(FHypotheses, BuiltinsPassAndArInequalityHolds) {
  for (const Nonlinearity& nl : {Nonlinearity::min_power(3, 5), Nonlinearity::min_power_odd(2.5, 7),
                                 Nonlinearity::pure_power(4)}) {
    const FHypothesisReport r = check_f_hypotheses(nl);
    EXPECT_TRUE(r.passed) << nl.describe();
    for (int k = -60; k <= 60; ++k) {
      const double t = std::pow(10.0, k / 10.0);
      EXPECT_LE(nl.theta() * nl.F(t), nl.f(t) * t * (1 + 1e-12));
      EXPECT_GE(nl.F(t), nl.m() * std::min(std::pow(t, nl.q1()), std::pow(t, nl.q2())) * (1 - 1e-12));
    }
  }
}

TEST(FHypotheses, LinearFFailsGrowthNearZero) {
  const Nonlinearity lin = Nonlinearity::custom([](double t) { return t; }, [](double t) { return t * t / 2; },
                                                3, 5, 1.0, 3, 0.1);
  const FHypothesisReport r = check_f_hypotheses(lin);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.f1);
}

TEST(Energy, QuadraticPartIsHalfSquaredNorm) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 500);
  const EnergyFunctional I = example2_functional(g, Nonlinearity::pure_power(5));
  std::mt19937_64 rng(1);
  const auto u = positive_random(g, rng);
  const EnergyBreakdown e = I.energy(u);
  const double nx = I.form().norm(u.values());
  EXPECT_LT(rel_err(e.quadratic, nx * nx / 2), 1e-13);
  EXPECT_LT(rel_err(e.potential, I.kF(u.values())), 1e-13);
  EXPECT_DOUBLE_EQ(e.total, e.quadratic - e.potential);
}

TEST(Energy, DerivativeMatchesCentralDifference) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 500);
  const EnergyFunctional I = example2_functional(g, Nonlinearity::min_power(3, 5));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto u = positive_random(g, rng), h = rt::signed_random(g, rng);
    const double eps = 1e-5;
    const double fd = (I.energy((u + eps * h).values()).total - I.energy((u - eps * h).values()).total) / (2 * eps);
    const double d = I.derivative(u.values(), h.values());
    EXPECT_LT(std::abs(fd - d), 1e-6 * (std::abs(d) + I.form().norm(h.values()) * I.form().norm(u.values())));
  }
}

TEST(Energy, XGradientRepresentsTheDerivative) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 400);
  const EnergyFunctional I = example2_functional(g, Nonlinearity::pure_power(5));
  std::mt19937_64 rng(3);
  const auto u = positive_random(g, rng);
  const std::vector<double> grad = I.x_gradient(u.values());
  EXPECT_EQ(grad.back(), 0.0);
  for (int t = 0; t < 20; ++t) {
    const auto h = rt::signed_random(g, rng);
    const double d = I.derivative(u.values(), h.values());
    EXPECT_NEAR(I.form().inner(grad, h.values()), d, 1e-9 * (std::abs(d) + 1));
  }
  EXPECT_LT(rel_err(I.ps_residual(u.values()), I.form().norm(grad)), 1e-12);
}

TEST(Energy, ZeroNonlinearityGradientIsIdentity) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 400);
  const EnergyFunctional I = example2_functional(g, Nonlinearity::zero());
  std::mt19937_64 rng(4);
  const auto u = rt::signed_random(g, rng);
  const std::vector<double> grad = I.x_gradient(u.values());
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(grad[i], u[i], 1e-9 * u.max_abs());
  EXPECT_THROW(I.nehari_scale(u.values()), NoScaleError);
}

TEST(Nehari, PurePowerClosedForm) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 500);
  const double q = 5;
  const EnergyFunctional I = example2_functional(g, Nonlinearity::pure_power(q));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto u = positive_random(g, rng);
    const double nx = I.form().norm(u.values());
    double kq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) kq += I.k_weights()[i] * std::pow(u[i], q);
    const double oracle = std::pow(nx * nx / kq, 1.0 / (q - 2));
    const double lambda = I.nehari_scale(u.values());
    EXPECT_LT(rel_err(lambda, oracle), 1e-8);
    EXPECT_NEAR(I.derivative((lambda * u).values(), u.values()), 0.0, 1e-8 * lambda * nx * nx);
    EXPECT_LT(rel_err(I.nehari_scale((3.0 * u).values()), lambda / 3.0), 1e-8);
  }
}

TEST(Nehari, ScaleMaximizesEnergyAlongTheRay) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 500);
  const EnergyFunctional I = example2_functional(g, Nonlinearity::min_power(3, 5));
  std::mt19937_64 rng(6);
  const auto u = positive_random(g, rng);
  const double lambda = I.nehari_scale(u.values());
  const double peak = I.energy((lambda * u).values()).total;
  EXPECT_GT(peak, 0.0);
  for (int k = -200; k <= 200; ++k) {
    const double t = lambda * std::pow(10.0, k / 100.0);
    EXPECT_LE(I.energy((t * u).values()).total, peak * (1 + 1e-10));
  }
}

TEST(Nehari, NegativeDirectionHasNoScale) {
  const auto g = RadialGrid::build(6, 1e-5, 1e3, 300);
  const EnergyFunctional I = example2_functional(g, Nonlinearity::pure_power(5));
  std::mt19937_64 rng(7);
  const auto u = positive_random(g, rng);
  EXPECT_THROW(I.nehari_scale((-1.0 * u).values()), NoScaleError);
  EXPECT_THROW(I.nehari_scale(DiscreteRadialFunction::zero(g).values()), NoScaleError);
}
