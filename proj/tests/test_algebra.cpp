#include <gtest/gtest.h>

#include "generators.hpp"

using namespace jetlift;

namespace {

const std::vector<std::string> XY{"x", "y"};

Poly P(const char* text, const std::vector<std::string>& names = XY) { return parse_poly(text, names); }

}  // namespace

// ---------------------------------------------------------------------------
// Rational

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 7).to_string(), "0");
  EXPECT_EQ(Rational(10, 5).to_string(), "2");
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational(6, -4).raw().get_den(), 2);
}

TEST(Rational, ParseAndArithmetic) {
  EXPECT_EQ(Rational::parse("-6/8"), Rational(-3, 4));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(-2, 3).inverse(), Rational(-3, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), argument_error);
  EXPECT_THROW(Rational::parse("abc"), argument_error);
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
  EXPECT_THROW(Rational(0).inverse(), argument_error);
}

TEST(Rational, Factorial) {
  EXPECT_EQ(factorial(0), Rational(1));
  EXPECT_EQ(factorial(5), Rational(120));
  EXPECT_EQ(factorial(20).to_string(), "2432902008176640000");
  EXPECT_EQ(factorial(21).to_string(), "51090942171709440000");
}

// ---------------------------------------------------------------------------
// Poly arithmetic

TEST(Poly, ArithmeticExamples) {
  const Poly x = Poly::variable(1, 0);
  EXPECT_TRUE((x + (-x)).is_zero());
  EXPECT_EQ((x + Poly::constant(1, 1)) * (x - Poly::constant(1, 1)), x * x - Poly::constant(1, 1));
  EXPECT_EQ((x * Rational(2)) * Rational(3, 2), x * Rational(3));
}

TEST(Poly, MismatchedVariableCounts) {
  EXPECT_THROW(Poly::variable(1, 0) + Poly::variable(2, 0), dimension_error);
  EXPECT_THROW(Poly::variable(1, 0) * Poly::variable(2, 0), dimension_error);
}

TEST(Poly, NoStoredZeros) {
  Poly p(2);
  p.add_term({1, 0}, Rational(2));
  p.add_term({1, 0}, Rational(-2));
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
  EXPECT_EQ(p, Poly(2));
}

TEST(Poly, RejectsNegativeExponents) {
  Poly p(1);
  EXPECT_THROW(p.add_term({-1}, Rational(1)), argument_error);
  Laurent l(1);
  l.add_term({-1}, Rational(1));
  EXPECT_TRUE(l.has_negative_exponent());
  EXPECT_THROW(to_poly(l), argument_error);
}

TEST(Poly, CanonicalPrinting) {
  Poly p(2);
  p.add_term({0, 0}, Rational(1));
  p.add_term({0, 1}, Rational(-1));
  p.add_term({2, 1}, Rational(3, 2));
  EXPECT_EQ(to_string(p, XY), "3/2*x^2*y - y + 1");
  EXPECT_EQ(to_string(Poly(2), XY), "0");
  EXPECT_EQ(to_string(P("-x"), XY), "-x");
  EXPECT_EQ(to_string(P("y^2 + x*y + x^2"), XY), "x^2 + x*y + y^2");
  Laurent l(1);
  l.add_term({-2}, Rational(-1));
  l.add_term({1}, Rational(1));
  EXPECT_EQ(to_string(l, {"z"}), "z - z^-2");
}

TEST(Poly, Partial) {
  EXPECT_EQ(partial(P("x^2*y"), 0), P("2*x*y"));
  EXPECT_TRUE(partial(P("x^2"), 1).is_zero());
  EXPECT_EQ(partial(P("x^3 - 3*x", {"x"}), 0), P("3*x^2 - 3", {"x"}));
  EXPECT_THROW(partial(P("x"), 2), index_error);
  Laurent l(1);
  l.add_term({-2}, Rational(1));
  Laurent d(1);
  d.add_term({-3}, Rational(-2));
  EXPECT_EQ(partial(l, 0), d);
}

TEST(Poly, Evaluate) {
  EXPECT_EQ(evaluate(P("x^2 + y^2"), Point{1, 0}), Rational(1));
  EXPECT_EQ(evaluate(P("x^2 + y^2"), Point{Rational(3, 2), Rational(1, 2)}), Rational(5, 2));
  EXPECT_EQ(evaluate(Poly(2), Point{7, 9}), Rational(0));
  EXPECT_THROW(evaluate(P("x"), Point{1}), dimension_error);
}

TEST(Poly, Compose) {
  // (x + y)^2 at (x, y) = (t, t^2) in one variable
  const auto t = Poly::variable(1, 0);
  EXPECT_EQ(compose(P("x^2 + 2*x*y + y^2"), std::vector<Poly>{t, t * t}, 1), P("t^2 + 2*t^3 + t^4", {"t"}));
}

TEST(Poly, RemapVariables) {
  EXPECT_EQ(remap_variables(P("x*y^2"), 3, {2, 0}), parse_poly("y^2*c", {"y", "b", "c"}));
}

TEST(Poly, TruncateDegree) { EXPECT_EQ(truncate_degree(P("1 + x + x*y + x^3"), 1), P("1 + x")); }

// Ring axioms, exact, on random inputs.
TEST(PolyProperties, RingAxioms) {
  gen::Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const Poly a = rng.poly(m, 3, 4), b = rng.poly(m, 3, 4), c = rng.poly(m, 3, 4);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * Poly::constant(m, 1), a);
  }
}

TEST(PolyProperties, Leibniz) {
  gen::Rng rng(102);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const Poly f = rng.poly(m, 3, 4), g = rng.poly(m, 3, 4);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(m) - 1));
    EXPECT_EQ(partial(f * g, k), f * partial(g, k) + g * partial(f, k));
  }
}

// Evaluation is a ring homomorphism; checked against direct summation.
TEST(PolyProperties, EvaluationHomomorphism) {
  gen::Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const Poly f = rng.poly(m, 3, 4), g = rng.poly(m, 3, 4);
    const Point x = rng.point(m);
    EXPECT_EQ(evaluate(f * g, x), evaluate(f, x) * evaluate(g, x));
    EXPECT_EQ(evaluate(f + g, x), evaluate(f, x) + evaluate(g, x));
    Rational direct(0);
    for (const auto& [e, c] : f.terms()) {
      Rational term = c;
      for (std::size_t k = 0; k < m; ++k)
        for (int a = 0; a < e[k]; ++a) term *= x[k];
      direct += term;
    }
    EXPECT_EQ(evaluate(f, x), direct);
  }
}

TEST(Laurent, UnitsAndPowers) {
  const Laurent z = Laurent::variable(1, 0);
  const Laurent zi = ring_traits<Laurent>::inverse(z);
  EXPECT_EQ(z * zi, Laurent::constant(1, 1));
  EXPECT_EQ(ring_pow(z, -3) * ring_pow(z, 3), Laurent::constant(1, 1));
  EXPECT_THROW(ring_traits<Laurent>::inverse(z + Laurent::constant(1, 1)), argument_error);
  EXPECT_EQ(z.exponent_range(0), (std::pair<int, int>{1, 1}));
}

// ---------------------------------------------------------------------------
// Series

TEST(Series, ComposeExamples) {
  // x^2 along 1 + t, order 1
  TruncSeries g(1, 1);
  g.coeffs[0][0] = 1;
  g.coeffs[1][0] = 1;
  const auto s = poly_compose_series(P("x^2", {"x"}), g);
  EXPECT_EQ(s, (series<Rational>(std::vector<Rational>{1, 2})));
}

TEST(Series, ConservedRadius) {
  // (cos t, -sin t) to order 4
  TruncSeries g(2, 4);
  g.coeffs[0] = {1, 0};
  g.coeffs[1] = {0, -1};
  g.coeffs[2] = {Rational(-1, 2), 0};
  g.coeffs[3] = {0, Rational(1, 6)};
  g.coeffs[4] = {Rational(1, 24), 0};
  const auto s = poly_compose_series(P("x^2 + y^2"), g);
  EXPECT_EQ(s, (series<Rational>(std::vector<Rational>{1, 0, 0, 0, 0})));
}

TEST(Series, ConstantArc) {
  gen::Rng rng(104);
  const Poly f = rng.poly(2, 3, 5);
  const Point c = rng.point(2);
  TruncSeries g(2, 3);
  g.coeffs[0] = c;
  const auto s = poly_compose_series(f, g);
  EXPECT_EQ(s, series<Rational>::constant(3, evaluate(f, c)));
}

TEST(Series, DimensionMismatch) {
  EXPECT_THROW(poly_compose_series(P("x"), TruncSeries(3, 2)), dimension_error);
  EXPECT_THROW(series<Rational>(2, Rational(0)) + series<Rational>(3, Rational(0)), dimension_error);
}

TEST(Series, InverseAndIntegrate) {
  // 1/(1 - t) = 1 + t + t^2 + t^3
  series<Rational> s(std::vector<Rational>{1, -1, 0, 0});
  EXPECT_EQ(inverse(s), (series<Rational>(std::vector<Rational>{1, 1, 1, 1})));
  EXPECT_THROW(inverse(series<Rational>(std::vector<Rational>{0, 1})), std::exception);
  // integral of 1 + t + t^2 truncated at order 2
  EXPECT_EQ(integrate(series<Rational>(std::vector<Rational>{1, 1, 1})),
            (series<Rational>(std::vector<Rational>{0, 1, Rational(1, 2)})));
}

TEST(SeriesProperties, CompositionHomomorphism) {
  gen::Rng rng(105);
  for (int i = 0; i < 150; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t order = static_cast<std::size_t>(rng.uniform(0, 5));
    const Poly f = rng.poly(m, 3, 4), g = rng.poly(m, 3, 4);
    const auto arcs = rng.arcs(m, order);
    const TruncSeries gamma = TruncSeries::from_components(arcs);
    EXPECT_EQ(poly_compose_series(f * g, gamma), poly_compose_series(f, gamma) * poly_compose_series(g, gamma));
    EXPECT_EQ(poly_compose_series(f, gamma)[0], evaluate(f, gamma.coeffs[0]));
  }
}

// Oracle for series multiplication: Cauchy product by explicit double sum
// then truncation.
TEST(SeriesProperties, TruncatedProductMatchesFullProduct) {
  gen::Rng rng(106);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 6));
    const auto a = rng.arcs(1, n)[0], b = rng.arcs(1, n)[0];
    std::vector<Rational> full(2 * n + 1, Rational(0));
    for (std::size_t p = 0; p <= n; ++p)
      for (std::size_t q = 0; q <= n; ++q) full[p + q] += a[p] * b[q];
    full.resize(n + 1);
    EXPECT_EQ(a * b, series<Rational>(full));
  }
}

// ---------------------------------------------------------------------------
// Linear algebra

TEST(Linalg, RankAndSolve) {
  using linalg::Matrix;
  const Matrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(linalg::rank(a), 2u);
  auto x = linalg::solve(a, {1, 2, 1});
  ASSERT_TRUE(x);
  for (std::size_t r = 0; r < 3; ++r) {
    Rational s(0);
    for (std::size_t c = 0; c < 3; ++c) s += a[r][c] * (*x)[c];
    EXPECT_EQ(s, (linalg::Vector{1, 2, 1})[r]);
  }
  EXPECT_FALSE(linalg::solve(a, {1, 3, 1}));
  EXPECT_EQ(linalg::rank(Matrix{}), 0u);
}

TEST(Linalg, SolveWithoutEquations) {
  const auto x = linalg::solve({}, {}, 3);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (linalg::Vector{0, 0, 0}));
  EXPECT_THROW(linalg::solve({{1, 2}}, {1}, 3), dimension_error);
}

TEST(Linalg, ReduceModuloColumns) {
  // column space spanned by e0; normal form of (3, 4) is (0, 4)
  const auto a = linalg::from_columns({{1, 0}}, 2);
  EXPECT_EQ(linalg::reduce_modulo_columns(a, {3, 4}), (linalg::Vector{0, 4}));
}
