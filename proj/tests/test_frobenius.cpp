#include <gtest/gtest.h>

#include "generators.hpp"

using namespace jetlift;

namespace {

const std::vector<std::string> XY{"x", "y"};

Distribution D(const char* gens, const std::vector<std::string>& names = XY) {
  return Distribution(names.size(), parse_fields(gens, names));
}

}  // namespace

TEST(Rank, Examples) {
  const auto f = D("x, 0; 0, x");
  EXPECT_EQ(rank_at(f, {1, 0}), 2u);
  EXPECT_EQ(rank_at(f, {0, 5}), 0u);
  EXPECT_EQ(rank_at(D("1, 0"), {7, -3}), 1u);
  EXPECT_EQ(rank_at(D("1, 0; 1, 0"), {0, 0}), 1u);
  EXPECT_EQ(rank_at(Distribution(2, {}), {0, 0}), 0u);
  EXPECT_THROW(rank_at(f, {1}), dimension_error);
  EXPECT_THROW(Distribution(2, parse_fields("1", {"x"})), dimension_error);
}

TEST(Minors, Determinants) {
  const auto f = D("x, y; y, x");
  const auto minors = generator_minors(f, 2);
  ASSERT_EQ(minors.size(), 1u);
  EXPECT_EQ(minors[0].value, parse_poly("x^2 - y^2", XY));
  EXPECT_EQ(generator_minors(f, 1).size(), 4u);
  EXPECT_TRUE(generator_minors(f, 3).empty());
  EXPECT_EQ(combinations(4, 2).size(), 6u);
}

TEST(Involutivity, CertifiedAtDegreeZero) {
  const auto v = involutivity_certificate(D("x, 0; 0, x"), 0);
  ASSERT_TRUE(std::holds_alternative<InvolutivityCertificate>(v));
  const auto& c = std::get<InvolutivityCertificate>(v);
  ASSERT_EQ(c.relations.size(), 1u);
  EXPECT_EQ(c.relations[0].coeffs, (std::vector<Poly>{Poly(2), Poly::constant(2, 1)}));
  EXPECT_EQ(c.degree_bound, 0u);
}

TEST(Involutivity, CommutingFieldsHaveZeroCoefficients) {
  const auto f = D("1, 0; 0, 1");
  const auto v = involutivity_certificate(f, 0);
  ASSERT_TRUE(std::holds_alternative<InvolutivityCertificate>(v));
  for (const auto& c : std::get<InvolutivityCertificate>(v).relations[0].coeffs) EXPECT_TRUE(c.is_zero());
}

TEST(Involutivity, RefutedAtTheOrigin) {
  const auto f = D("1, 0; 0, x");
  for (unsigned d : {0u, 1u, 3u}) {
    const auto v = involutivity_certificate(f, d);
    ASSERT_TRUE(std::holds_alternative<CounterexamplePoint>(v));
    const auto& p = std::get<CounterexamplePoint>(v);
    EXPECT_EQ(p.point, (Point{0, 0}));
    EXPECT_TRUE(bracket_leaves_span(f, lie_bracket(f.gens[p.i], f.gens[p.j]), p.point));
  }
}

TEST(Involutivity, InconclusiveWhenCoefficientDegreeTooLow) {
  // [d/dx, x^2 d/dx] = 2x d/dx = (2/x) * x^2 d/dx off x = 0; with d/dx in F the
  // bracket is 2x * d/dx, which needs a degree-1 coefficient.
  const std::vector<std::string> x{"x"};
  const auto f = D("1; x^2", x);
  const auto low = involutivity_certificate(f, 0);
  EXPECT_TRUE(std::holds_alternative<NotFoundUpTo>(low));
  EXPECT_EQ(std::get<NotFoundUpTo>(low).degree_bound, 0u);
  EXPECT_TRUE(std::holds_alternative<InvolutivityCertificate>(involutivity_certificate(f, 1)));
}

// Certificates re-expand to the bracket; counterexamples raise the rank.
TEST(InvolutivityProperties, Soundness) {
  gen::Rng rng(501);
  int certs = 0, counters = 0;
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<VectorField> g;
    const int s = rng.uniform(1, 3);
    for (int k = 0; k < s; ++k) g.push_back(rng.field(m, 1, 2));
    const Distribution f(m, g);
    const auto v = involutivity_certificate(f, 1, 1);
    if (const auto* c = std::get_if<InvolutivityCertificate>(&v)) {
      ++certs;
      for (const auto& r : c->relations) EXPECT_TRUE(relation_holds(f, r));
    } else if (const auto* p = std::get_if<CounterexamplePoint>(&v)) {
      ++counters;
      auto cols = std::vector<linalg::Vector>{};
      for (const auto& d : f.gens) cols.push_back(evaluate(d, p->point));
      cols.push_back(evaluate(lie_bracket(f.gens[p->i], f.gens[p->j]), p->point));
      EXPECT_GT(linalg::rank(linalg::from_columns(cols, m)), rank_at(f, p->point));
    }
  }
  EXPECT_GT(certs, 0);
  EXPECT_GT(counters, 0);
}

TEST(SampleGrid, OriginFirst) {
  const auto g = sample_grid(2, 1);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), (Point{0, 0}));
}

TEST(Strata, Examples) {
  const auto grid = parse_grid("x=-1:1:1, y=-1:1:1", XY);
  const auto rep = strata_sample(D("x, 0; 0, x"), grid);
  ASSERT_EQ(rep.strata.size(), 2u);
  EXPECT_EQ(rep.strata.at(2).size(), 6u);
  EXPECT_EQ(rep.strata.at(0).size(), 3u);
  for (const auto& p : rep.strata.at(0)) EXPECT_TRUE(p[0].is_zero());

  const auto all1 = strata_sample(D("1, 0"), grid);
  ASSERT_EQ(all1.strata.size(), 1u);
  EXPECT_EQ(all1.strata.at(1).size(), 9u);

  const auto none = strata_sample(Distribution(2, {}), grid);
  EXPECT_EQ(none.strata.at(0).size(), 9u);
}

TEST(Strata, Errors) {
  EXPECT_THROW(strata_sample(D("1, 0"), {}), argument_error);
  EXPECT_THROW(strata_sample(D("1, 0"), {GridAxis{0, 1, 1}}), dimension_error);
  EXPECT_THROW(strata_sample(D("1, 0"), {GridAxis{0, 1, 0}, GridAxis{0, 1, 1}}), argument_error);
}

TEST(StrataProperties, RankBoundAndPartition) {
  gen::Rng rng(502);
  for (int i = 0; i < 30; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<VectorField> g;
    const int s = rng.uniform(0, 3);
    for (int k = 0; k < s; ++k) g.push_back(rng.field(m, 2, 2));
    const Distribution f(m, g);
    std::vector<GridAxis> grid(m, GridAxis{-1, 1, Rational(1, 2)});
    const auto rep = strata_sample(f, grid);
    std::size_t total = 0;
    for (const auto& [r, pts] : rep.strata) {
      EXPECT_LE(r, std::min<std::size_t>(m, static_cast<std::size_t>(s)));
      total += pts.size();
    }
    EXPECT_EQ(total, grid_points(grid).size());
  }
}

// Lower semicontinuity at corpus points: nearby generic points have rank at
// least the rank of the stratum point.
TEST(StrataProperties, SemicontinuitySpotCheck) {
  struct Case {
    const char* gens;
    Point x, nearby;
  };
  const std::vector<Case> corpus{
      {"x, 0; 0, x", {0, 5}, {Rational(1, 100), 5}},
      {"x, 0; 0, x", {0, 0}, {Rational(1, 7), Rational(1, 9)}},
      {"1, 0; 0, x", {0, 0}, {Rational(1, 50), 0}},
      {"y, 0; 0, x*y", {1, 0}, {1, Rational(1, 20)}},
  };
  for (const auto& c : corpus) {
    const auto f = D(c.gens);
    EXPECT_GE(rank_at(f, c.nearby), rank_at(f, c.x)) << c.gens;
  }
}

TEST(Involutivity, ZeroGenerators) {
  const auto v = involutivity_certificate(D("0, 0; 0, 0"), 1);
  ASSERT_TRUE(std::holds_alternative<InvolutivityCertificate>(v));
  const auto& rel = std::get<InvolutivityCertificate>(v).relations.at(0);
  ASSERT_EQ(rel.coeffs.size(), 2u);
  for (const auto& c : rel.coeffs) EXPECT_TRUE(c.is_zero());
}
