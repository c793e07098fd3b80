#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace jetlift {

// Sections over the two-chart curve Y = U_0 u U_1 with parameters z on U_0
// and w on U_1, glued by w = 1/z. Chart sections are lists of generator
// coefficients, each a Laurent polynomial in one variable. Overlap sections
// are always written in chart-0 terms (variable z, chart-0 generators).

struct CurveAtlas {
  std::array<std::string, 2> params{"z", "w"};
  const std::string& param(std::size_t chart) const { return params.at(chart); }
};

/// Inclusive exponent range.
struct Window {
  int lo = -8, hi = 8;
  bool contains(int e) const { return lo <= e && e <= hi; }
  Window widened(int by) const { return {lo - by, hi + by}; }
  std::size_t size() const { return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0; }
  friend bool operator==(const Window&, const Window&) = default;
};

using Section = std::vector<Laurent>;  // one univariate Laurent coefficient per generator

inline Laurent laurent_monomial(int e, const Rational& c) { return Laurent::monomial({e}, c); }

/// p(w) -> p(1/z)
inline Laurent invert_parameter(const Laurent& p) {
  Laurent r(1);
  for (const auto& [e, c] : p.terms()) r.add_term({-e[0]}, c);
  return r;
}

inline std::pair<int, int> exponent_span(const Section& s) {
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& p : s)
    if (!p.is_zero()) {
      auto [a, b] = p.exponent_range(0);
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  return {lo, hi};
}

inline bool fits(const Section& s, const Window& w) {
  auto [lo, hi] = exponent_span(s);
  return lo == INT_MAX || (w.contains(lo) && w.contains(hi));
}

inline void require_fits(const Section& s, const Window& w, const std::string& what) {
  auto [lo, hi] = exponent_span(s);
  if (lo == INT_MAX || (w.contains(lo) && w.contains(hi))) return;
  throw window_overflow(what + " leaves the degree window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                            "]",
                        std::min(lo, w.lo), std::max(hi, w.hi));
}

/// Rule taking chart-1 generator coefficients to chart-0 ones on the
/// overlap: c0(z) = rule(z) * c1(1/z). Entries are Laurent in z, s0 x s1.
struct SheafTransition {
  std::vector<std::vector<Laurent>> rule;

  static SheafTransition scalar(const Laurent& r) { return {{{r}}}; }
  std::size_t rows() const { return rule.size(); }
  std::size_t cols() const { return rule.empty() ? 0 : rule[0].size(); }
};

/// Chart section expressed on the overlap in chart-0 terms.
inline Section restrict_section(std::size_t chart, const Section& s, const SheafTransition& t, const Window& overlap) {
  Section out;
  if (chart == 0) {
    if (s.size() != t.rows()) throw dimension_error("chart-0 section has wrong number of generator coefficients");
    out = s;
  } else if (chart == 1) {
    if (s.size() != t.cols()) throw dimension_error("chart-1 section has wrong number of generator coefficients");
    out.assign(t.rows(), Laurent(1));
    for (std::size_t j = 0; j < t.rows(); ++j)
      for (std::size_t k = 0; k < t.cols(); ++k) out[j] += t.rule[j][k] * invert_parameter(s[k]);
  } else {
    throw index_error("the curve has two charts");
  }
  require_fits(out, overlap, "restricted section");
  return out;
}

struct Cochain0 {
  std::array<Section, 2> lambda;
  Window window;
};

/// Both orientations stored, each in chart-0 terms.
struct Cochain1 {
  Section nu01, nu10;
  Window window;
};

inline Section negate(const Section& s) {
  Section r;
  for (const auto& p : s) r.push_back(-p);
  return r;
}

/// (delta lambda)_{01} = lambda_0|_{01} - lambda_1|_{01}
inline Cochain1 coboundary(const Cochain0& l, const SheafTransition& t) {
  Section a = restrict_section(0, l.lambda[0], t, l.window);
  const Section b = restrict_section(1, l.lambda[1], t, l.window);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
  require_fits(a, l.window, "coboundary");
  return {a, negate(a), l.window};
}

/// With two charts there are no triple overlaps: the cocycle condition is
/// antisymmetry.
inline bool cocycle_check(const Cochain1& nu) {
  return nu.nu01.size() == nu.nu10.size() && nu.nu10 == negate(nu.nu01);
}

struct Obstruction {
  Section residual;             // normal form of nu modulo the image of delta
  std::size_t cokernel_dim = 0;  // dim of overlap space / image within the windows
};

using CoboundarySolution = std::variant<Cochain0, Obstruction>;

namespace detail {

struct CoboundarySystem {
  linalg::Matrix matrix;                                   // rows: (gen j, exponent) on the overlap
  std::vector<std::pair<std::size_t, std::pair<std::size_t, int>>> unknowns;  // (chart, (gen, exponent))
};

inline std::size_t overlap_row(std::size_t gen, int e, const Window& w) {
  return gen * w.size() + static_cast<std::size_t>(e - w.lo);
}

/// delta restricted to chart-polynomial sections with exponents 0..hi
/// whose restriction stays inside the overlap window.
inline CoboundarySystem coboundary_system(const SheafTransition& t, const Window& w) {
  CoboundarySystem sys;
  const std::size_t rows = t.rows() * w.size();
  std::vector<linalg::Vector> cols;
  const int start = std::max(w.lo, 0);
  for (std::size_t k = 0; k < t.rows(); ++k)
    for (int e = start; e <= w.hi; ++e) {
      linalg::Vector col(rows);
      col[overlap_row(k, e, w)] = Rational(1);
      cols.push_back(std::move(col));
      sys.unknowns.push_back({0, {k, e}});
    }
  for (std::size_t k = 0; k < t.cols(); ++k)
    for (int e = start; e <= w.hi; ++e) {
      Section unit(t.cols(), Laurent(1));
      unit[k] = laurent_monomial(e, Rational(1));
      Section image(t.rows(), Laurent(1));
      for (std::size_t j = 0; j < t.rows(); ++j) image[j] = t.rule[j][k] * invert_parameter(unit[k]);
      if (!fits(image, w)) continue;
      linalg::Vector col(rows);
      for (std::size_t j = 0; j < t.rows(); ++j)
        for (const auto& [ex, c] : image[j].terms()) col[overlap_row(j, ex[0], w)] = -c;
      cols.push_back(std::move(col));
      sys.unknowns.push_back({1, {k, e}});
    }
  sys.matrix = cols.empty() ? linalg::Matrix(rows) : linalg::from_columns(cols, rows);
  return sys;
}

inline linalg::Vector flatten(const Section& s, const Window& w) {
  linalg::Vector v(s.size() * w.size());
  for (std::size_t j = 0; j < s.size(); ++j)
    for (const auto& [e, c] : s[j].terms()) v[overlap_row(j, e[0], w)] = c;
  return v;
}

inline Section unflatten(const linalg::Vector& v, std::size_t gens, const Window& w) {
  Section s(gens, Laurent(1));
  for (std::size_t j = 0; j < gens; ++j)
    for (int e = w.lo; e <= w.hi; ++e) s[j].add_term({e}, v[overlap_row(j, e, w)]);
  return s;
}

}  // namespace detail

/// Exact solve of delta(lambda) = nu with chart-polynomial lambda inside
/// the window. Among all solutions the chart-0 part is preferred, so
/// shared constants land on chart 0 and chart 1 gets zero.
inline CoboundarySolution solve_coboundary(const Cochain1& nu, const SheafTransition& t) {
  if (!cocycle_check(nu)) throw precondition_error("cochain is not antisymmetric");
  if (nu.nu01.size() != t.rows()) throw dimension_error("cochain has wrong number of generator coefficients");
  const Window& w = nu.window;
  require_fits(nu.nu01, w, "cochain");
  if (w.size() == 0) throw argument_error("empty degree window");

  const auto sys = detail::coboundary_system(t, w);
  const linalg::Vector rhs = detail::flatten(nu.nu01, w);
  if (auto x = linalg::solve(sys.matrix, rhs)) {
    Cochain0 out;
    out.window = w;
    out.lambda[0].assign(t.rows(), Laurent(1));
    out.lambda[1].assign(t.cols(), Laurent(1));
    for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
      const auto& [chart, ge] = sys.unknowns[u];
      out.lambda[chart][ge.first].add_term({ge.second}, (*x)[u]);
    }
    return out;
  }
  Obstruction ob;
  ob.cokernel_dim = rhs.size() - linalg::rank(sys.matrix);
  ob.residual = detail::unflatten(linalg::reduce_modulo_columns(sys.matrix, rhs), t.rows(), w);
  return ob;
}

/// dim of the cokernel of delta within the window (0 when H^1 vanishes there).
inline std::size_t cokernel_dimension(const SheafTransition& t, const Window& w) {
  const auto sys = detail::coboundary_system(t, w);
  return t.rows() * w.size() - linalg::rank(sys.matrix);
}

inline std::string to_string(const Section& s, const std::string& param) {
  std::string out = "(";
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j) out += ", ";
    out += to_string(s[j], {param});
  }
  return out + ")";
}

}  // namespace jetlift
