#include <gtest/gtest.h>

#include "generators.hpp"

using namespace jetlift;

namespace {

Jet J1(std::vector<Rational> xs) {
  std::vector<Point> c;
  for (const auto& x : xs) c.push_back({x});
  return Jet(1, std::move(c));
}

}  // namespace

TEST(Jet, Construction) {
  EXPECT_THROW(Jet(1, {}), argument_error);
  EXPECT_THROW(Jet(2, {{1, 2}, {3}}), dimension_error);
  const Jet j = J1({1, 2, 3});
  EXPECT_EQ(j.order(), 2u);
  EXPECT_EQ(j.basepoint(), (Point{1}));
}

TEST(Jet, Project) {
  EXPECT_EQ(jet_project(J1({1, 1, 1}), 1), J1({1, 1}));
  const Jet j = J1({4, 5, 6});
  EXPECT_EQ(jet_project(j, 2), j);
  EXPECT_EQ(jet_project(j, 0), J1({4}));
  EXPECT_THROW(jet_project(j, 3), argument_error);
}

TEST(Jet, Difference) {
  const auto d = jet_difference(J1({0, 1, 2}), J1({0, 1, 5}));
  EXPECT_EQ(d.vec, (Point{-3}));
  EXPECT_EQ(d.basepoint, (Point{0}));
  EXPECT_TRUE(jet_difference(J1({3, 1, 2}), J1({3, 1, 2})).is_zero());
  const Jet a(2, {{0, 0}, {1, 0}, {0, 1}}), b(2, {{0, 0}, {1, 0}, {0, 0}});
  EXPECT_EQ(jet_difference(a, b).vec, (Point{0, 1}));
}

TEST(Jet, DifferenceRejectsLowerOrderMismatch) {
  try {
    jet_difference(J1({0, 1, 2, 3}), J1({0, 2, 2, 3}));
    FAIL() << "expected precondition_error";
  } catch (const precondition_error& e) {
    EXPECT_EQ(e.index(), 1);
  }
  EXPECT_THROW(jet_difference(J1({0, 1}), J1({0, 1, 2})), dimension_error);
}

TEST(Jet, Translate) {
  EXPECT_EQ(jet_translate(J1({0, 1, 2}), TangentVector({0}, {3})), J1({0, 1, 5}));
  EXPECT_EQ(jet_translate(J1({0, 1, 2}), TangentVector({0}, {0})), J1({0, 1, 2}));
  EXPECT_THROW(jet_translate(J1({0, 1, 2}), TangentVector({1}, {3})), precondition_error);
}

TEST(Jet, SeriesConversion) {
  const auto s = jet_to_series(J1({1, 1, 1}));
  EXPECT_EQ(s.coeffs[2][0], Rational(1, 2));
  EXPECT_EQ(series_to_jet(s), J1({1, 1, 1}));
  EXPECT_EQ(series_to_jet(jet_to_series(J1({7}))), J1({7}));
}

TEST(Jet, Printing) {
  const Jet a(2, {{0, 0}, {1, Rational(-1, 2)}});
  EXPECT_EQ(to_string(a), "((0,0),(1,-1/2))");
}

TEST(JetProperties, TranslationIsAGroupAction) {
  gen::Rng rng(301);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const Jet j = rng.jet(m, n);
    const TangentVector v(j.basepoint(), rng.point(m)), w(j.basepoint(), rng.point(m));
    EXPECT_EQ(jet_translate(jet_translate(j, v), w), jet_translate(j, v + w));
    EXPECT_EQ(jet_project(jet_translate(j, v), n - 1), jet_project(j, n - 1));
    EXPECT_EQ(jet_difference(jet_translate(j, v), j), v);
  }
}

TEST(JetProperties, SeriesRoundTrip) {
  gen::Rng rng(302);
  for (int i = 0; i < 200; ++i) {
    const Jet j = rng.jet(static_cast<std::size_t>(rng.uniform(1, 3)), static_cast<std::size_t>(rng.uniform(0, 6)));
    EXPECT_EQ(series_to_jet(jet_to_series(j)), j);
    const TruncSeries s = jet_to_series(j);
    EXPECT_EQ(jet_to_series(series_to_jet(s)), s);
  }
}
