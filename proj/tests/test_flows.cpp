#include <gtest/gtest.h>

#include "generators.hpp"

using namespace jetlift;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

VectorField F(const char* text, const std::vector<std::string>& names = XY) { return parse_field(text, names); }

Jet J(std::vector<Point> c) {
  const std::size_t m = c.front().size();
  return Jet(m, std::move(c));
}

}  // namespace

TEST(FlowJet, Examples) {
  EXPECT_EQ(flow_jet(F("1, 0"), {0, 0}, 3), J({{0, 0}, {1, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(flow_jet(F("x", {"x"}), {1}, 4), J({{1}, {1}, {1}, {1}, {1}}));
  EXPECT_EQ(flow_jet(F("y, -x"), {1, 0}, 2), J({{1, 0}, {0, -1}, {-1, 0}}));
  EXPECT_THROW(flow_jet(F("y, -x"), {1}, 2), dimension_error);
}

TEST(FlowJet, OrderZeroAndOne) {
  EXPECT_EQ(flow_jet(F("y, -x"), {3, 4}, 0), J({{3, 4}}));
  EXPECT_EQ(flow_jet(F("y, -x"), {3, 4}, 1), J({{3, 4}, {4, -3}}));
}

TEST(Picard, Examples) {
  const auto a = flow_series_picard(F("1, 0"), {0, 0}, 1);
  EXPECT_EQ(a.coeffs, (std::vector<Point>{{0, 0}, {1, 0}}));
  const auto b = flow_series_picard(F("x", {"x"}), {1}, 3);
  EXPECT_EQ(b.coeffs, (std::vector<Point>{{1}, {1}, {Rational(1, 2)}, {Rational(1, 6)}}));
  const auto c = flow_series_picard(F("1, x"), {0, 0}, 3);
  EXPECT_EQ(c.coeffs, (std::vector<Point>{{0, 0}, {1, 0}, {0, Rational(1, 2)}, {0, 0}}));
  EXPECT_THROW(flow_series_picard(F("1, x"), {0}, 3), dimension_error);
}

// The derivation-power jet against the Picard oracle.
TEST(FlowProperties, OracleEquivalence) {
  gen::Rng rng(401);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const unsigned n = static_cast<unsigned>(rng.uniform(0, 6));
    const VectorField d = rng.field(m, 2, 3);
    const Point x0 = rng.point(m);
    EXPECT_EQ(series_to_jet(flow_series_picard(d, x0, n)), flow_jet(d, x0, n));
  }
}

TEST(FlowProperties, TowerAndFirstOrder) {
  gen::Rng rng(402);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const VectorField d = rng.field(m, 3, 3);
    const Point x0 = rng.point(m);
    const Jet j = flow_jet(d, x0, 5);
    for (std::size_t k = 0; k <= 5; ++k) EXPECT_EQ(jet_project(j, k), flow_jet(d, x0, static_cast<unsigned>(k)));
    EXPECT_EQ(j.coords[1], evaluate(d, x0));
  }
}

TEST(FlowProperties, Reparametrization) {
  gen::Rng rng(403);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const VectorField d = rng.field(m, 2, 3);
    const Point x0 = rng.point(m);
    const Rational c = rng.rational();
    const Jet a = flow_jet(d * c, x0, 4), b = flow_jet(d, x0, 4);
    for (unsigned k = 0; k <= 4; ++k)
      for (std::size_t v = 0; v < m; ++v) EXPECT_EQ(a.coords[k][v], b.coords[k][v] * pow(c, static_cast<int>(k)));
  }
}

TEST(JetDefect, WorkedExamples) {
  EXPECT_EQ(jet_defect(F("1, 0"), F("1, x"), {0, 0}, 1).vec, (Point{0, 1}));
  EXPECT_EQ(jet_defect(F("1, 0"), F("1, x^2"), {0, 0}, 2).vec, (Point{0, 2}));
  EXPECT_TRUE(jet_defect(F("y, x"), F("y, x"), {1, 2}, 3).is_zero());
}

TEST(JetDefect, Preconditions) {
  try {
    jet_defect(F("1, 0"), F("1, x"), {0, 0}, 2);
    FAIL() << "expected precondition_error";
  } catch (const precondition_error& e) {
    EXPECT_EQ(e.index(), 2);
  }
  try {
    jet_defect(F("1, 0"), F("0, 1"), {0, 0}, 1);
    FAIL() << "expected precondition_error";
  } catch (const precondition_error& e) {
    EXPECT_EQ(e.index(), 1);
  }
  EXPECT_THROW(jet_defect(F("1, 0"), F("1, 0"), {0, 0}, 0), argument_error);
  EXPECT_THROW(jet_defect(F("1, 0"), F("1", {"x"}), {0, 0}, 1), dimension_error);
}

TEST(VerifyDj, Examples) {
  const auto r = verify_dj(F("1, 0"), F("1, x"), {0, 0}, 1);
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.jet_difference.vec, (Point{0, 1}));
  EXPECT_EQ(r.derivation_power, (Point{0, 1}));
  EXPECT_EQ(r.bracket, (Point{0, 1}));
}

TEST(VerifyDj, CommutingFieldsWithEqualJets) {
  // x d/dx and 2x d/dx commute; both vanish at the origin
  const auto r = verify_dj(F("x", {"x"}), F("2*x", {"x"}), {0}, 3);
  EXPECT_TRUE(r.agree);
  EXPECT_TRUE(r.jet_difference.is_zero());
  EXPECT_EQ(r.bracket, (Point{0}));
}

TEST(VerifyDj, RandomizedPerturbationsInIdealPower) {
  gen::Rng rng(404);
  for (int i = 0; i < 40; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const unsigned n = static_cast<unsigned>(rng.uniform(1, 3));
    const VectorField d1 = rng.field(m, 2, 3);
    const Point x0 = rng.point(m, 1);
    const VectorField d2 = d1 + rng.field_in_ideal_power(x0, n, 1, 2);
    ASSERT_EQ(flow_jet(d1, x0, n), flow_jet(d2, x0, n));
    const auto r = verify_dj(d1, d2, x0, n);
    EXPECT_TRUE(r.agree) << to_string(d1, default_names(m)) << " vs " << to_string(d2, default_names(m));
    EXPECT_EQ(jet_defect(d1, d2, x0, n).vec, r.bracket);
  }
}

// ---------------------------------------------------------------------------
// Stratum invariance

TEST(StratumInvariance, InvolutiveExamples) {
  const Distribution a(3, parse_fields("1, 0, 0; 0, 0, y", XYZ));
  const auto ra = stratum_invariance_check(a, {Poly::constant(3, 1), Poly(3)}, {0, 0, 0});
  EXPECT_EQ(ra.rank, 1u);
  EXPECT_TRUE(ra.holds());
  EXPECT_GT(ra.minors_checked, 0u);

  const Distribution c(2, parse_fields("x, 0; 0, x", XY));
  const auto rc = stratum_invariance_check(c, {Poly::constant(2, 1), Poly(2)}, {0, 1});
  EXPECT_EQ(rc.rank, 0u);
  EXPECT_TRUE(rc.holds());
}

TEST(StratumInvariance, FullRankIsVacuous) {
  const Distribution f(2, parse_fields("1, 0; 0, 1", XY));
  const auto r = stratum_invariance_check(f, {Poly::constant(2, 1), Poly::constant(2, 1)}, {3, 4});
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.minors_checked, 0u);
  EXPECT_TRUE(r.holds());
}

TEST(StratumInvariance, NonInvolutiveWitnessViolates) {
  // <d/dx, x d/dy> has rank 1 on x = 0; the flow of d/dx leaves that line
  const Distribution f(2, parse_fields("1, 0; 0, x", XY));
  const auto r = stratum_invariance_check(f, {Poly::constant(2, 1), Poly(2)}, {0, 0});
  EXPECT_EQ(r.rank, 1u);
  ASSERT_FALSE(r.holds());
  EXPECT_EQ(r.violations.front().first_nonzero_order, 1u);
  EXPECT_EQ(r.violations.front().coefficient, Rational(1));
}

TEST(StratumInvariance, DimensionErrors) {
  const Distribution f(2, parse_fields("1, 0; 0, x", XY));
  EXPECT_THROW(stratum_invariance_check(f, {Poly::constant(2, 1)}, {0, 0}), dimension_error);
  EXPECT_THROW(stratum_invariance_check(f, {Poly::constant(2, 1), Poly(2)}, {0}), dimension_error);
}
