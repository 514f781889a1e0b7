#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "radialmp/error.hpp"
#include "radialmp/spaces.hpp"

using namespace radialmp;
namespace rt = radialmp::testing;
using radialmp::testing::rel_err;

namespace {

std::shared_ptr<const RadialGrid> uniform_grid(int N, double h, int count) {
  std::vector<double> nodes;
  for (int k = 1; k <= count; ++k) nodes.push_back(k * h);
  return RadialGrid::from_nodes(N, nodes);
}

/// Minimum over every threshold at which the split changes, plus a uniform
/// scan: exact for the threshold-restricted norm, which is piecewise constant
/// in T with jumps only at the values |u_i|.
double exhaustive_sum_norm(const DiscreteRadialFunction& u, const PotentialSpec& K, double q1, double q2,
                           int scan) {
  const double top = u.max_abs();
  double best = sum_norm_at(u, K, q1, q2, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) best = std::min(best, sum_norm_at(u, K, q1, q2, std::abs(u[i])));
  for (int k = 0; k <= scan; ++k) best = std::min(best, sum_norm_at(u, K, q1, q2, top * k / scan));
  return best;
}

}  // namespace

TEST(DiscreteFunction, RejectsNonFiniteAndWrongSize) {
  const auto g = RadialGrid::build(3, 1e-3, 10, 50);
  EXPECT_THROW(DiscreteRadialFunction(g, std::vector<double>(49, 0.0)), ParameterError);
  std::vector<double> v(50, 0.0);
  v[3] = NAN;
  EXPECT_THROW(DiscreteRadialFunction(g, v), ParameterError);
}

TEST(DiscreteFunction, CsvRoundTrip) {
  const auto g = RadialGrid::build(4, 1e-4, 50, 300);
  std::mt19937_64 rng(11);
  const DiscreteRadialFunction u = rt::signed_random(g, rng);
  std::stringstream ss;
  ss << "# provenance line\n";
  u.write_csv(ss, "u");
  const DiscreteRadialFunction v = DiscreteRadialFunction::read_csv(ss, 4);
  ASSERT_EQ(v.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(v.grid().node(i), g->node(i));
    EXPECT_EQ(v[i], u[i]);
  }
}

TEST(DiscreteFunction, InterpolationReproducesLinearAndExtends) {
  const auto coarse = RadialGrid::build(3, 1e-2, 10, 40);
  const auto fine = RadialGrid::build(3, 1e-3, 20, 400);
  const auto u = DiscreteRadialFunction::sample(coarse, [](double r) { return 3.0 - 0.25 * r; });
  const auto v = u.interpolate_to(fine);
  for (std::size_t i = 0; i < fine->size(); ++i) {
    const double r = fine->node(i);
    if (r < 1e-2) {
      EXPECT_DOUBLE_EQ(v[i], u[0]);
    } else if (r > 10.0) {
      EXPECT_EQ(v[i], 0.0);
    } else {
      EXPECT_NEAR(v[i], 3.0 - 0.25 * r, 1e-12);
    }
  }
}

TEST(DiscreteFunction, GridMismatch) {
  const auto g1 = RadialGrid::build(3, 1e-3, 10, 40);
  const auto g2 = RadialGrid::build(3, 1e-3, 10, 41);
  const auto u = DiscreteRadialFunction::zero(g1), h = DiscreteRadialFunction::zero(g2);
  const auto p = rt::constants();
  EXPECT_THROW(inner_product_X(u, h, p.A, p.V), GridMismatch);
}

TEST(NormA, ZeroFunction) {
  const auto g = RadialGrid::build(3, 1e-3, 10, 40);
  EXPECT_EQ(norm_A(DiscreteRadialFunction::zero(g), PotentialSpec::pure_power(1, 0)), 0.0);
}

TEST(NormA, HatFunctionClosedForm) {
  const auto g = uniform_grid(3, 0.01, 400);
  const auto u = DiscreteRadialFunction::sample(g, [](double r) {
    return std::max(0.0, 1.0 - 2.0 * std::abs(r - 1.5));
  });
  // slope +-2 on [1, 2]: omega_3 * 4 * int_1^2 r^2 dr = 4 pi * 4 * 7/3
  const double exact = std::sqrt(4 * M_PI * 4 * 7.0 / 3.0);
  EXPECT_LT(rel_err(norm_A(u, PotentialSpec::pure_power(1, 0)), exact), 1e-3);
}

TEST(NormA, Homogeneity) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 800);
  std::mt19937_64 rng(5);
  const auto A = rt::example2().A;
  for (int t = 0; t < 20; ++t) {
    const auto u = rt::signed_random(g, rng);
    const double c = -3.7 + 0.5 * t;
    EXPECT_LT(std::abs(norm_A(c * u, A) - std::abs(c) * norm_A(u, A)), 1e-13 * std::abs(c) * norm_A(u, A));
  }
}

TEST(InnerProductX, DefinitionSymmetryCauchySchwarz) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 600);
  const auto p = rt::example2();
  const XForm X(g, p.A, p.V);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto u = rt::signed_random(g, rng), h = rt::signed_random(g, rng);
    const double uu = inner_product_X(u, u, p.A, p.V), hh = inner_product_X(h, h, p.A, p.V);
    const double uh = inner_product_X(u, h, p.A, p.V);
    const NormBundle nb = norms(u, p.A, p.V);
    EXPECT_LT(rel_err(uu, nb.norm_X * nb.norm_X), 1e-12);
    EXPECT_LT(rel_err(nb.norm_X * nb.norm_X, nb.norm_A * nb.norm_A + nb.norm_V * nb.norm_V), 1e-12);
    EXPECT_NEAR(uh, inner_product_X(h, u, p.A, p.V), 1e-13 * std::sqrt(uu * hh));
    EXPECT_LE(uh * uh, uu * hh * (1 + 1e-12));
    EXPECT_LT(std::abs(X.inner(u.values(), h.values()) - uh), 1e-11 * std::sqrt(uu * hh));
  }
}

TEST(XForm, RieszSolvesTheDualProblem) {
  const auto g = RadialGrid::build(3, 1e-5, 1e2, 300);
  const auto p = rt::example1();
  const XForm X(g, p.A, p.V);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  std::vector<double> dual(g->size());
  for (double& d : dual) d = nd(rng);
  const std::vector<double> r = X.riesz(dual);
  EXPECT_EQ(r.back(), 0.0);
  std::vector<double> Gr(g->size());
  X.apply(r, Gr);
  for (std::size_t i = 0; i + 1 < g->size(); ++i) EXPECT_NEAR(Gr[i], dual[i], 1e-9 * (1 + std::abs(dual[i])));
}

TEST(NormLqK, ZeroPlateauAndMonotone) {
  const auto g = RadialGrid::build(3, 1e-4, 20, 4000);
  const auto one = PotentialSpec::pure_power(1, 0);
  EXPECT_EQ(norm_LqK(DiscreteRadialFunction::zero(g), one, 2.0), 0.0);
  const double a = 1.0, b = 3.0, h = 2.5;
  const auto u = DiscreteRadialFunction::sample(g, [&](double r) { return r >= a && r <= b ? h : 0.0; });
  const double oracle = h * std::sqrt(4 * M_PI / 3 * (b * b * b - a * a * a));
  EXPECT_LT(rel_err(norm_LqK(u, one, 2.0), oracle), 5e-3);
  const auto K = rt::example2().K;
  std::mt19937_64 rng(9);
  const auto v = rt::signed_random(g, rng);
  for (double R : {0.01, 0.1, 1.0, 10.0}) EXPECT_LE(norm_LqK(v, K, 3.0, Region::ball(R)), norm_LqK(v, K, 3.0));
  EXPECT_THROW(norm_LqK(v, K, 1.0), ParameterError);
}

TEST(SumNorm, ZeroFunction) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 200);
  const SumNorm s = sum_norm(DiscreteRadialFunction::zero(g), rt::example2().K, 3, 5);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(s.threshold, 0.0);
}

TEST(SumNorm, OneSidedDecomposition) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 400);
  std::mt19937_64 rng(4);
  const auto K = rt::example2().K;
  const auto u = rt::signed_random(g, rng);
  const double T0 = u.max_abs();
  EXPECT_EQ(sum_norm_at(u, K, 3, 5, T0), norm_LqK(u, K, 5));
  EXPECT_EQ(sum_norm_at(u, K, 3, 5, 2 * T0), norm_LqK(u, K, 5));
  EXPECT_LT(rel_err(sum_norm_at(u, K, 3, 5, 0.0), norm_LqK(u, K, 3)), 1e-14);
  const SumNorm s = sum_norm(u, K, 3, 5);
  EXPECT_LE(s.value, std::min(norm_LqK(u, K, 3), norm_LqK(u, K, 5)));
}

TEST(SumNorm, MatchesExhaustiveThresholdScan) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 200);
  const auto K = rt::example2().K;
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    auto u = rt::signed_random(g, rng);
    u *= std::pow(10.0, (t % 7) - 3.0);
    const SumNorm s = sum_norm(u, K, 3, 5);
    const double oracle = exhaustive_sum_norm(u, K, 3, 5, 10000);
    EXPECT_LE(std::abs(s.value - oracle), 1e-8 * oracle) << "trial " << t;
    EXPECT_NEAR(sum_norm_at(u, K, 3, 5, s.threshold), s.value, 1e-15 * s.value);
  }
}

TEST(SumNorm, HomogeneityAndTriangle) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 300);
  const auto K = rt::example2().K;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto u = rt::signed_random(g, rng), v = rt::signed_random(g, rng);
    const double c = 0.1 + 0.4 * t;
    EXPECT_LT(rel_err(sum_norm(c * u, K, 3, 5).value, c * sum_norm(u, K, 3, 5).value), 1e-10);
    EXPECT_LE(sum_norm(u + v, K, 3, 5).value,
              (sum_norm(u, K, 3, 5).value + sum_norm(v, K, 3, 5).value) * (1 + 1e-8));
  }
}

TEST(Embedding, LebesgueOverGradientRatioStabilizes) {
  // ||u||_{L^p0(B_1)} + ||u||_{L^pinf(B_1^c)} <= C ||u||_A with p0 = 12, pinf = 3.
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 800);
  const auto A = rt::example2().A;
  const auto one = PotentialSpec::pure_power(1, 0);
  std::mt19937_64 rng(13);
  auto batch_max = [&](int n) {
    double m = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto u = rt::signed_random(g, rng);
      const double lhs = norm_LqK(u, one, 12.0, Region::ball(1.0)) + norm_LqK(u, one, 3.0, Region::complement(1.0));
      m = std::max(m, lhs / norm_A(u, A));
    }
    return m;
  };
  const double m500 = batch_max(500);
  const double m1000 = std::max(m500, batch_max(500));
  EXPECT_TRUE(std::isfinite(m500));
  EXPECT_LT(m1000 / m500, 1.1);
}

TEST(DecayInfinity, ZeroFunctionPasses) {
  const auto g = RadialGrid::build(3, 1e-3, 10, 100);
  const DecayCheck d = verify_decay_infinity(DiscreteRadialFunction::zero(g), PotentialSpec::pure_power(1, 0), 1.0);
  EXPECT_EQ(d.max_ratio, 0.0);
  EXPECT_TRUE(d.passed);
}

TEST(DecayInfinity, TentTailClosedForm) {
  const auto g = uniform_grid(3, 0.001, 4000);
  const auto u = DiscreteRadialFunction::sample(g, [](double r) { return std::max(0.0, 2.0 - r); });
  const DecayCheck d = verify_decay_infinity(u, PotentialSpec::pure_power(1, 0), 1.0);
  EXPECT_NEAR(d.C_bound, 1.0 / std::sqrt(4 * M_PI), 1e-12);
  // max_{r>=1} (2 - r) r^{1/2} is attained at r = 1; ||u||_A^2 on r > 1 = 4 pi (8 - 1)/3
  const double oracle = 1.0 / std::sqrt(4 * M_PI * 7.0 / 3.0);
  EXPECT_LT(rel_err(d.max_ratio, oracle), 1e-3);
  EXPECT_TRUE(d.passed);
}

TEST(DecayInfinity, RequiresSupportInGrid) {
  const auto g = RadialGrid::build(3, 1e-3, 10, 100);
  const auto u = DiscreteRadialFunction::sample(g, [](double) { return 1.0; });
  EXPECT_THROW(verify_decay_infinity(u, PotentialSpec::pure_power(1, 0), 1.0), SupportError);
}

TEST(DecayInfinity, RandomBatteryPasses) {
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 1500);
  const auto A = rt::example2().A;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto u = rt::signed_random(g, rng);
    EXPECT_TRUE(verify_decay_infinity(u, A, 1.0).passed) << t;
  }
}

TEST(DecayOrigin, ZeroTentAndSupport) {
  const auto g = uniform_grid(3, 0.001, 4000);
  const auto one = PotentialSpec::pure_power(1, 0);
  EXPECT_TRUE(verify_decay_origin(DiscreteRadialFunction::zero(g), one, 2.0).passed);
  const auto u = DiscreteRadialFunction::sample(g, [](double r) { return std::max(0.0, 2.0 - r); });
  const DecayCheck d = verify_decay_origin(u, one, 2.0);
  EXPECT_NEAR(d.C_bound, 1.0 / std::sqrt(4 * M_PI), 1e-12);
  // max_{r<2} (2 - r) r^{1/2} at r = 2/3; ||u||_A^2 on B_2 = 4 pi 8/3 (r_min ~ 0)
  const double oracle = (4.0 / 3.0) * std::sqrt(2.0 / 3.0) / std::sqrt(4 * M_PI * 8.0 / 3.0);
  EXPECT_LT(rel_err(d.max_ratio, oracle), 1e-3);
  EXPECT_TRUE(d.passed);
  EXPECT_THROW(verify_decay_origin(u, one, 1.0), SupportError);
}

TEST(DecayOrigin, RandomBatteryPasses) {
  const auto g = RadialGrid::build(3, 1e-6, 1e3, 1500);
  const auto A = rt::example1().A;
  std::mt19937_64 rng(37);
  BumpOptions o;
  o.support_radius = 1.0;
  o.center_hi = 1.0;
  for (int t = 0; t < 50; ++t) {
    const auto u = random_bumps(g, rng, o);
    EXPECT_TRUE(verify_decay_origin(u, A, 1.0).passed) << t;
  }
}
