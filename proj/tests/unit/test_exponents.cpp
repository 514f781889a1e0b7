#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "radialmp/exponents.hpp"

using namespace radialmp;
using R = Rational;

namespace {

ProblemParams params(int N, R a0, R ainf, R alpha0, R alphainf, R beta0, R betainf) {
  ProblemParams p;
  p.N = N;
  p.a0 = a0;
  p.ainf = ainf;
  p.alpha0 = alpha0;
  p.alphainf = alphainf;
  p.beta0 = beta0;
  p.betainf = betainf;
  return p;
}

ProblemParams example1(int N) { return params(N, 2, R(3, 2), R(1, 2), R(3, 2), 0, 0); }
ProblemParams example2(int N) { return params(N, -3, -2, 0, -2, 0, 0); }
ProblemParams example3(int N) { return params(N, -3, -2, 0, 0, 0, R(1, 2)); }

}  // namespace

TEST(BaseExponents, ExampleTwoValues) {
  const auto b = base_exponents<R>(6, R(-3), R(-2));
  EXPECT_EQ(b.p0, R(12));    // 12 / (6 - 3 - 2)
  EXPECT_EQ(b.pinf, R(6));   // 12 / (6 - 2 - 2)
  EXPECT_EQ(b.pstar, R(6));
  EXPECT_EQ(b.a, R(-2));
  EXPECT_EQ(b.sigma, R(6, 5));  // conjugate of pstar
}

TEST(BaseExponents, SelfConjugateAtTwo) {
  const auto b = base_exponents<R>(3, R(2), R(2));
  EXPECT_EQ(b.p0, R(2));
  EXPECT_EQ(b.pinf, R(2));
  EXPECT_EQ(b.pstar, R(2));
  EXPECT_EQ(b.sigma, R(2));
}

TEST(BaseExponents, ExampleOneInThreeDimensions) {
  const auto b = base_exponents<R>(3, R(2), R(3, 2));
  EXPECT_EQ(b.p0, R(2));
  EXPECT_EQ(b.pinf, R(12, 5));
}

TEST(BaseExponents, RejectsOutOfRange) {
  EXPECT_THROW(base_exponents<double>(3, -1.0, 0.0), ParameterError);
  EXPECT_THROW(base_exponents<double>(3, 0.0, 2.5), ParameterError);
  EXPECT_THROW(base_exponents<double>(2, 0.0, 0.0), ParameterError);
}

TEST(AlphaStar, Examples) {
  // N=6, a=-3, beta=0: 0 - 1 - 3 + 0 - 3/2 = -11/2 against -6.
  EXPECT_EQ(alpha_star<R>(6, R(-3), R(0)), R(-11, 2));
  // beta=1, a=2: max{-N/2, 0} = 0.
  EXPECT_EQ(alpha_star<R>(5, R(2), R(1)), R(0));
  // branches meet at beta=1/2: 1 - 1 - 3 + 1 - 1 = -3 and -(1/2) 6 = -3.
  EXPECT_EQ(alpha_star<R>(6, R(-2), R(1, 2)), R(-3));
}

TEST(QStar, ExampleFormulasAcrossDimensions) {
  for (int N = 3; N <= 12; ++N) {
    const R n(N);
    EXPECT_EQ(q_star<R>(N, R(2), R(1, 2), R(0)), (R(2) * n + R(1)) / n);
    EXPECT_EQ(q_star<R>(N, R(3, 2), R(3, 2), R(0)), (R(4) * n + R(6)) / (R(2) * n - R(1)));
    if (N > 4) EXPECT_EQ(q_star<R>(N, R(-2), R(0), R(1, 2)), R(2) * (n - R(2)) / (n - R(4)));
  }
}

TEST(QTilde, Examples) {
  EXPECT_EQ(q_tilde<R>(6, R(-2), R(3)), R(2));
  EXPECT_EQ(q_tilde<R>(3, R(2), R(12)), R(11, 6));
  // s -> infinity drops the 1/s term.
  EXPECT_NEAR(q_tilde<double>(6, -2.0, 1e15), 2.0 * (1.0 + 1.0 / 6.0) + 2.0 / 6.0, 1e-12);
  EXPECT_THROW(q_tilde<R>(6, R(-2), R(6, 5)), ParameterError);  // s = sigma
}

TEST(Intervals, ExampleTwoInSixDimensions) {
  const AdmissibleIntervals iv = admissible_intervals(example2(6));
  EXPECT_EQ(*iv.I1.lo_exact, R(1));
  EXPECT_EQ(*iv.I1.hi_exact, R(12));
  EXPECT_EQ(*iv.I2.lo_exact, R(4));
  EXPECT_TRUE(std::isinf(iv.I2.hi));
  EXPECT_FALSE(iv.overlap.empty);
  EXPECT_EQ(*iv.overlap.lo_exact, R(4));
  EXPECT_EQ(*iv.overlap.hi_exact, R(12));
}

TEST(Intervals, ExampleOneInThreeDimensionsIsDisjoint) {
  const AdmissibleIntervals iv = admissible_intervals(example1(3));
  EXPECT_EQ(*iv.I1.hi_exact, R(7, 3));
  EXPECT_EQ(*iv.I2.lo_exact, R(18, 5));
  EXPECT_TRUE(iv.overlap.empty);
  EXPECT_EQ(iv.overlap.to_string(), "empty");
}

TEST(Intervals, ExampleThreeLowerEndpoint) {
  for (int N = 6; N <= 10; ++N) {
    const AdmissibleIntervals iv = admissible_intervals(example3(N));
    EXPECT_EQ(*iv.I2.lo_exact, R(2) * (R(N) - R(2)) / (R(N) - R(4)));
  }
}

TEST(Intervals, DegenerateAlphaStarGivesEmptyI1) {
  ProblemParams p = example2(6);
  p.beta0 = R(1, 4);
  p.alpha0 = alpha_star<R>(6, R(-3), R(1, 4));
  EXPECT_TRUE(admissible_intervals(p).I1.empty);
}

TEST(Intervals, FloatingModeAgrees) {
  ProblemParams p = example2(6);
  p.a0 = ExactReal(std::nextafter(-3.0, 0.0));  // no small-denominator fraction
  EXPECT_FALSE(p.all_exact());
  const AdmissibleIntervals iv = admissible_intervals(p);
  EXPECT_NEAR(iv.overlap.lo, 4.0, 1e-12);
  EXPECT_NEAR(iv.overlap.hi, 12.0, 1e-12);
}

TEST(DecayExponents, ExampleTwoValues) {
  const DecayExponents d = decay_exponents(example2(6), 8.0, 6.0);
  EXPECT_NEAR(d.delta0, (6 - 3 - 2) * (12.0 - 8.0) / 2.0, 1e-12);
  EXPECT_NEAR(d.delta0, 2.0, 1e-12);
  EXPECT_NEAR(d.deltainf, (6 - 2 - 2) * (6.0 - 4.0) / 2.0, 1e-12);
  EXPECT_NEAR(predicted_delta0(example2(6), 12.0), 0.0, 1e-12);
  EXPECT_THROW(decay_exponents(example2(6), 13.0, 6.0), ParameterError);
  EXPECT_THROW(decay_exponents(example2(6), 8.0, 3.0), ParameterError);
}

TEST(ExponentReport, ExactModeAndConjugacy) {
  const ExponentReport r = exponent_report(example2(6));
  EXPECT_TRUE(r.exact_mode);
  EXPECT_EQ(r.exact.at("qstar0"), R(12));
  EXPECT_NEAR(1.0 / r.pstar + 1.0 / r.sigma, 1.0, 1e-15);
  EXPECT_NEAR(r.delta0(8.0), 2.0, 1e-12);
}

// Invariants over sampled parameters.

TEST(ExponentProperties, EndpointIdentity) {
  for (int N : {3, 4, 6, 9}) {
    for (int i = 1; i <= 50; ++i) {
      const double a = (2.0 - N) + i * (N / 50.0);
      for (int j = 0; j < 50; ++j) {
        const double beta = j / 49.0;
        const double q = q_star<double>(N, a, alpha_star<double>(N, a, beta), beta);
        EXPECT_NEAR(q, std::max(1.0, 2.0 * beta), 1e-12) << "N=" << N << " a=" << a << " beta=" << beta;
      }
    }
  }
}

TEST(ExponentProperties, EndpointIdentityExact) {
  for (int N : {3, 6}) {
    for (int an = 1; an <= 20; ++an) {
      const R a = R(2 - N) + R(an * N, 20);
      for (int bn = 0; bn <= 8; ++bn) {
        const R beta(bn, 8);
        const R q = q_star<R>(N, a, alpha_star<R>(N, a, beta), beta);
        EXPECT_EQ(q, std::max(R(1), R(2) * beta));
      }
    }
  }
}

TEST(ExponentProperties, MonotoneInAlphaAndConjugate) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = 3 + trial % 6;
    const double a0 = (2.0 - N) + 1e-3 + (N - 1e-3) * u01(rng);
    const double ainf = (2.0 - N) + 1e-3 + (N - 1e-3) * u01(rng);
    const double beta = u01(rng);
    const double alpha = -5 + 10 * u01(rng);
    EXPECT_LT(q_star<double>(N, a0, alpha, beta), q_star<double>(N, a0, alpha + 0.1, beta));
    const auto b = base_exponents<double>(N, a0, ainf);
    EXPECT_NEAR(1.0 / b.pstar + 1.0 / b.sigma, 1.0, 1e-12);
    const double first = 2 * 0.5 - 1 - N / 2.0 - a0 * 0.5 + a0 / 2.0;
    EXPECT_NEAR(first, -(1 - 0.5) * N, 1e-12);
    EXPECT_NEAR(alpha_star<double>(N, a0, 0.5), -0.5 * N, 1e-12);
  }
}

TEST(ExponentProperties, DeltaSignMatchesMembership) {
  const ProblemParams p = example2(6);
  for (double q = 1.5; q < 20; q += 0.37) {
    EXPECT_EQ(predicted_delta0(p, q) > 0, q < 12.0);
    EXPECT_EQ(predicted_deltainf(p, q) > 0, q > 4.0);
  }
}

TEST(ProblemParams, Validation) {
  ProblemParams p = example2(6);
  p.beta0 = R(3, 2);
  EXPECT_THROW(p.validate(), ParameterError);
  p = example2(6);
  p.a0 = R(-4);
  EXPECT_THROW(p.validate(), ParameterError);
}
