#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "radialmp/error.hpp"
#include "radialmp/io.hpp"

using namespace radialmp;
namespace rt = radialmp::testing;
using io::json;

namespace {

void expect_same_values(const PotentialSpec& a, const PotentialSpec& b) {
  for (int k = -12; k <= 12; ++k) {
    const double r = std::pow(10.0, k / 4.0);
    EXPECT_DOUBLE_EQ(a(r), b(r)) << "r=" << r;
  }
}

}  // namespace

TEST(Json, ReadNumberForms) {
  EXPECT_EQ(io::read_number(json(2.5), "x"), 2.5);
  EXPECT_TRUE(std::isinf(io::read_number(json("inf"), "x")));
  EXPECT_DOUBLE_EQ(io::read_number(json("3/2"), "x"), 1.5);
  EXPECT_DOUBLE_EQ(io::read_number(json("1e-3"), "x"), 1e-3);
  EXPECT_THROW(io::read_number(json("abc"), "x"), ParameterError);
  EXPECT_THROW(io::read_number(json::array(), "x"), ParameterError);
  const ExactReal e = io::read_exact(json("-7/4"), "x");
  ASSERT_TRUE(e.exact.has_value());
  EXPECT_EQ(*e.exact, Rational(-7, 4));
}

TEST(Json, PotentialRoundTrip) {
  const auto p1 = rt::example1(), p3 = rt::example3();
  for (const PotentialSpec& s : {p1.A, p1.V, p1.K, p3.V, PotentialSpec::pure_power(2, -1.5),
                                 PotentialSpec::tabulated({{0.1, 1.0}, {1.0, 2.0}, {10.0, 3.0}}, true)}) {
    const PotentialSpec back = io::potential_from_json(json::parse(io::to_json(s).dump()));
    expect_same_values(s, back);
  }
}

TEST(Json, PotentialRejectsUnknownForm) {
  EXPECT_THROW(io::potential_from_json(json{{"form", "wiggly"}}), ParameterError);
  EXPECT_THROW(io::potential_from_json(json{{"form", "pure_power"}, {"c", 1}}), ParameterError);
}

TEST(Json, NonlinearityRoundTrip) {
  for (const Nonlinearity& nl : {Nonlinearity::min_power(2.2, 4), Nonlinearity::min_power_odd(3, 5),
                                 Nonlinearity::pure_power(5), Nonlinearity::zero()}) {
    const Nonlinearity back = io::nonlinearity_from_json(io::to_json(nl));
    EXPECT_EQ(back.kind(), nl.kind());
    for (double t : {-2.0, -0.3, 0.0, 0.4, 1.0, 3.0}) EXPECT_DOUBLE_EQ(back.f(t), nl.f(t));
  }
}

TEST(Json, OptionsRoundTrip) {
  GridParams g;
  g.nodes = 1234;
  g.grading = Grading::TwoZone;
  g.switch_radius = 2.0;
  const GridParams gb = io::grid_from_json(io::to_json(g));
  EXPECT_EQ(io::to_json(gb), io::to_json(g));

  SolverOptions s;
  s.restarts = 3;
  s.seed = 77;
  s.newton_polish = false;
  EXPECT_EQ(io::to_json(io::solver_from_json(io::to_json(s))), io::to_json(s));

  ProbeOptions p;
  p.restarts = 5;
  p.tolerance = 1e-9;
  EXPECT_EQ(io::to_json(io::probe_options_from_json(io::to_json(p))), io::to_json(p));

  EXPECT_THROW(io::grid_from_json(json{{"nodes", 1}}), ParameterError);
}

TEST(Hash, FnvKnownValues) {
  EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_NE(io::fnv1a_hex("ab"), io::fnv1a_hex("ba"));
}

TEST(TextPosition, LinesAndColumns) {
  const std::string text = "ab\ncd\n\nefg";
  EXPECT_EQ(io::position_of(text, 0).line, 1u);
  EXPECT_EQ(io::position_of(text, 0).column, 1u);
  EXPECT_EQ(io::position_of(text, 4).line, 2u);
  EXPECT_EQ(io::position_of(text, 4).column, 2u);
  EXPECT_EQ(io::position_of(text, 9).line, 4u);
  EXPECT_EQ(io::position_of(text, 9).column, 3u);
}
