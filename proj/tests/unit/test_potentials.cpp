#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "radialmp/error.hpp"
#include "radialmp/potential.hpp"

using namespace radialmp;
using radialmp::testing::example1;
using radialmp::testing::example2;
using radialmp::testing::example3;

TEST(Potential, MinPowerAtFour) {
  const PotentialSpec A = PotentialSpec::min_power({1, 2}, {1, 1.5});
  EXPECT_DOUBLE_EQ(A(4.0), 8.0);
}

TEST(Potential, ConstantPurePower) {
  const PotentialSpec one = PotentialSpec::pure_power(1, 0);
  for (double r : {1e-9, 0.3, 1.0, 7.0, 1e9}) EXPECT_EQ(one(r), 1.0);
}

TEST(Potential, MaxPowerBothBranches) {
  const PotentialSpec A = PotentialSpec::max_power({1, -2}, {1, -3});
  EXPECT_DOUBLE_EQ(A(0.5), std::max(std::pow(0.5, -2.0), std::pow(0.5, -3.0)));
  EXPECT_DOUBLE_EQ(A(0.5), 8.0);
  EXPECT_DOUBLE_EQ(A(2.0), std::max(std::pow(2.0, -2.0), std::pow(2.0, -3.0)));
}

TEST(Potential, NonpositiveRadiusIsDomainError) {
  const PotentialSpec A = PotentialSpec::pure_power(1, 2);
  EXPECT_THROW(A(0.0), DomainError);
  EXPECT_THROW(A(-1.0), DomainError);
}

TEST(Potential, TabulatedRefusesExtrapolationUnlessEnabled) {
  const PotentialSpec t = PotentialSpec::tabulated({{1.0, 1.0}, {10.0, 100.0}});
  EXPECT_NEAR(t(std::sqrt(10.0)), 10.0, 1e-12);  // log-log linear: r^2
  EXPECT_THROW(t(100.0), ExtrapolationRefused);
  const PotentialSpec e = PotentialSpec::tabulated({{1.0, 1.0}, {10.0, 100.0}}, true);
  EXPECT_NEAR(e(100.0), 1e4, 1e-8);
}

TEST(Potential, ContinuousAcrossCrossover) {
  const PotentialSpec A = PotentialSpec::min_power({2, 1}, {3, -1});
  const double rc = *A.crossover();
  EXPECT_NEAR(rc, std::sqrt(1.5), 1e-14);
  EXPECT_NEAR(A(rc * (1 - 1e-12)), A(rc * (1 + 1e-12)), 1e-10);
}

TEST(Potential, ExtremeRadiiEvaluatedInLogSpace) {
  const PotentialSpec A = PotentialSpec::pure_power(3, -1.5);
  EXPECT_NEAR(A(1e-10) / (3 * std::pow(1e-10, -1.5)), 1.0, 1e-13);
  EXPECT_NEAR(A(1e10) / (3 * std::pow(1e10, -1.5)), 1.0, 1e-13);
}

TEST(FitAsymptotics, MinPowerAtZero) {
  const auto fit = fit_asymptotics(example1().A, AsymptoticEnd::Zero);
  EXPECT_NEAR(fit.exponent, 2.0, 1e-9);
  ASSERT_TRUE(fit.exact.has_value());
  EXPECT_EQ(*fit.exact, Rational(2));
}

TEST(FitAsymptotics, PurePowerBothEnds) {
  for (double e : {-2.5, 0.0, 1.0, 2.0}) {
    const PotentialSpec p = PotentialSpec::pure_power(3.25, e);
    for (AsymptoticEnd end : {AsymptoticEnd::Zero, AsymptoticEnd::Infinity}) {
      const auto fit = fit_asymptotics(p, end);
      EXPECT_NEAR(fit.exponent, e, 1e-9);
      EXPECT_NEAR(fit.liminf, 3.25, 1e-9);
      EXPECT_NEAR(fit.limsup, 3.25, 1e-9);
    }
  }
}

TEST(FitAsymptotics, ExponentialIsNotPowerLike) {
  const PotentialSpec V = PotentialSpec::exp_scaled(1, 2);
  try {
    fit_asymptotics(V, AsymptoticEnd::Infinity);
    FAIL() << "expected FitFailed";
  } catch (const FitFailed& e) {
    // Oracle: the log-log curve of e^{2r} bends, so a line leaves a residual.
    EXPECT_GT(e.residual(), FitOptions{}.tolerance);
  }
}

TEST(FitAsymptotics, RandomMinMaxFamiliesPickDominantBranch) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(0.2, 5.0), expo(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    PowerTerm t1{coef(rng), expo(rng)}, t2{coef(rng), expo(rng)};
    if (std::abs(t1.e - t2.e) < 0.2) continue;
    const double hi = std::max(t1.e, t2.e), lo = std::min(t1.e, t2.e);
    const PotentialSpec mn = PotentialSpec::min_power(t1, t2);
    const PotentialSpec mx = PotentialSpec::max_power(t1, t2);
    EXPECT_NEAR(fit_asymptotics(mn, AsymptoticEnd::Zero).exponent, hi, 1e-9);
    EXPECT_NEAR(fit_asymptotics(mn, AsymptoticEnd::Infinity).exponent, lo, 1e-9);
    EXPECT_NEAR(fit_asymptotics(mx, AsymptoticEnd::Zero).exponent, lo, 1e-9);
    EXPECT_NEAR(fit_asymptotics(mx, AsymptoticEnd::Infinity).exponent, hi, 1e-9);
  }
}

TEST(HypothesisA, ExampleTwoInSixDimensions) {
  const HypothesisReport r = check_hypothesis_A(example2().A, 6);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(*r.a0_exact, Rational(-3));
  EXPECT_EQ(*r.ainf_exact, Rational(-2));
}

TEST(HypothesisA, BoundaryExponentTwoAllowed) {
  const HypothesisReport r = check_hypothesis_A(PotentialSpec::pure_power(1, 2), 3);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.a0_est, 2.0, 1e-12);
  EXPECT_NEAR(r.ainf_est, 2.0, 1e-12);
}

TEST(HypothesisA, ExponentBelowTwoMinusNFails) {
  const HypothesisReport r = check_hypothesis_A(PotentialSpec::pure_power(1, -2), 3);
  EXPECT_FALSE(r.passed);
  // -2 > 2 - N = -1 is false: the strict lower bound is violated.
  EXPECT_FALSE(-2.0 > 2.0 - 3);
  ASSERT_FALSE(r.messages.empty());
  EXPECT_NE(r.messages.front().find("a0"), std::string::npos);
}

TEST(HypothesisA, ExamplesRecoverTheirExponents) {
  struct Case {
    PotentialSpec A;
    int N;
    Rational a0, ainf;
  };
  for (const Case& c : {Case{example1().A, 3, Rational(2), Rational(3, 2)},
                        Case{example2().A, 6, Rational(-3), Rational(-2)},
                        Case{example3().A, 6, Rational(-3), Rational(-2)}}) {
    const HypothesisReport r = check_hypothesis_A(c.A, c.N);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(*r.a0_exact, c.a0);
    EXPECT_EQ(*r.ainf_exact, c.ainf);
  }
}

TEST(HypothesisK, ExampleTwoRequiredExponent) {
  const HypothesisReport r = check_hypothesis_K(example2().K, 6, -3, -2);
  EXPECT_TRUE(r.passed);
  // max{2N/(N - a0 + 2), 2N/(N - ainf + 2)} = max{12/11, 12/10}
  EXPECT_NEAR(r.s_required, std::max(12.0 / 11.0, 12.0 / 10.0), 1e-14);
  EXPECT_NEAR(r.s_used, r.s_required + 1.0, 1e-14);
}

TEST(HypothesisK, ConstantAndExponentialPass) {
  EXPECT_TRUE(check_hypothesis_K(PotentialSpec::pure_power(1, 0), 4, 0.5, 1.0).passed);
  EXPECT_TRUE(check_hypothesis_K(PotentialSpec::exp_scaled(1, 1), 6, -3, -2).passed);
}

TEST(HypothesisV, NegativeVFails) {
  EXPECT_TRUE(check_hypothesis_V(PotentialSpec::pure_power(1, -4)).passed);
  EXPECT_TRUE(check_hypothesis_V(PotentialSpec::pure_power(0, 0)).passed);
  EXPECT_FALSE(check_hypothesis_V(PotentialSpec::pure_power(-1, 0)).passed);
}

TEST(RatioBound, ExampleThreeComplementIsOne) {
  const auto p = example3();
  const RatioBound b = ratio_bound(p.K, p.V, 0.0, 0.5, RatioRegion::complement(1.0));
  EXPECT_FALSE(b.infinite);
  EXPECT_NEAR(b.lambda, 1.0, 1e-9);
}

TEST(RatioBound, IdenticalPotentialsGiveOne) {
  const PotentialSpec one = PotentialSpec::pure_power(1, 0);
  EXPECT_DOUBLE_EQ(ratio_bound(one, one, 0.0, 1.0, RatioRegion::ball(3.0)).lambda, 1.0);
}

TEST(RatioBound, ExampleOneBallMatchesDenseSampling) {
  const auto p = example1();
  double oracle = 0.0;
  for (int k = 0; k <= 200000; ++k) {
    const double r = std::pow(10.0, -8.0 + 8.0 * k / 200000.0);
    oracle = std::max(oracle, std::max(std::sqrt(r), std::pow(r, 1.5)) / std::sqrt(r));
  }
  const RatioBound b = ratio_bound(p.K, p.V, 0.5, 0.0, RatioRegion::ball(1.0));
  EXPECT_NEAR(b.lambda, oracle, 1e-12);
  EXPECT_NEAR(b.lambda, 1.0, 1e-12);
}

TEST(RatioBound, MonotoneInRegion) {
  const auto p = example2();
  double prev = 0.0;
  for (double R : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const double l = ratio_bound(p.K, p.V, -0.5, 0.0, RatioRegion::ball(R)).lambda;
    EXPECT_GE(l, prev);
    prev = l;
  }
  prev = 0.0;
  for (double R : {100.0, 10.0, 1.0, 0.1}) {
    const double l = ratio_bound(p.K, p.V, -2.5, 0.0, RatioRegion::complement(R)).lambda;
    EXPECT_GE(l, prev);
    prev = l;
  }
}

TEST(RatioBound, UnboundedRatioDetected) {
  const PotentialSpec K = PotentialSpec::pure_power(1, 1);
  const PotentialSpec V = PotentialSpec::pure_power(1, 0);
  EXPECT_TRUE(ratio_bound(K, V, 0.0, 0.0, RatioRegion::complement(1.0)).infinite);
}

TEST(RatioBound, VanishingVWithPositiveBetaIsInfinite) {
  const RatioBound b = ratio_bound(PotentialSpec::pure_power(1, 0), PotentialSpec::pure_power(0, 0), 0.0,
                                   0.5, RatioRegion::ball(1.0));
  EXPECT_TRUE(b.infinite);
  EXPECT_FALSE(b.message.empty());
}
