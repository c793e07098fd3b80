#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "frobenius.hpp"
#include "jet.hpp"
#include "poly.hpp"
#include "series.hpp"
#include "vector_field.hpp"

namespace jetlift {

namespace detail {

inline void check_point(const VectorField& d, const Point& x0) {
  if (x0.size() != d.num_vars()) throw dimension_error("basepoint and field have different dimension");
}

/// Substitution x -> y + x0 as polynomials in y.
inline std::vector<Poly> shift_to(const Point& x0) {
  const std::size_t m = x0.size();
  std::vector<Poly> s;
  for (std::size_t k = 0; k < m; ++k) s.push_back(Poly::variable(m, k) + Poly::constant(m, x0[k]));
  return s;
}

}  // namespace detail

/// Values (D^j f)(x0) for j = 0..n. Works in coordinates centred at x0
/// and drops every term that cannot reach the constant term within the
/// remaining applications (D lowers total degree by at most one).
inline std::vector<Rational> derivation_values_at(const VectorField& d, const Poly& f, unsigned n, const Point& x0) {
  detail::check_point(d, x0);
  if (f.num_vars() != d.num_vars()) throw dimension_error("function and field have different dimension");
  const std::size_t m = d.num_vars();
  const auto shift = detail::shift_to(x0);
  std::vector<Poly> comps;
  for (const auto& a : d.components()) comps.push_back(truncate_degree(compose(a, shift, m), static_cast<int>(n)));
  const VectorField ds(std::move(comps));

  std::vector<Rational> out;
  Poly g = truncate_degree(compose(f, shift, m), static_cast<int>(n));
  out.push_back(g.constant_term());
  for (unsigned j = 1; j <= n; ++j) {
    g = truncate_degree(apply_derivation(ds, g), static_cast<int>(n - j));
    out.push_back(g.constant_term());
  }
  return out;
}

/// n-jet of the integral curve of D through x0: x_i[k] = (D^i x_k)(x0).
inline Jet flow_jet(const VectorField& d, const Point& x0, unsigned n) {
  detail::check_point(d, x0);
  const std::size_t m = d.num_vars();
  std::vector<Point> coords(n + 1, Point(m));
  for (std::size_t k = 0; k < m; ++k) {
    auto vals = derivation_values_at(d, Poly::variable(m, k), n, x0);
    for (unsigned i = 0; i <= n; ++i) coords[i][k] = vals[i];
  }
  return Jet(m, std::move(coords));
}

/// Integral curve by Picard iteration gamma <- x0 + int_0^t D(gamma),
/// exact mod t^{N+1}. Each round fixes one more coefficient, so the
/// iteration is stationary after at most N+1 rounds.
inline TruncSeries flow_series_picard(const VectorField& d, const Point& x0, unsigned order) {
  detail::check_point(d, x0);
  const std::size_t m = d.num_vars();
  std::vector<series<Rational>> gamma;
  for (std::size_t k = 0; k < m; ++k) gamma.push_back(series<Rational>::constant(order, x0[k]));
  if (m == 0) return TruncSeries(0, order);
  for (unsigned round = 0; round <= order + 1; ++round) {
    std::vector<series<Rational>> next;
    for (std::size_t k = 0; k < m; ++k)
      next.push_back(series<Rational>::constant(order, x0[k]) + integrate(compose_series(d[k], gamma)));
    if (next == gamma) return TruncSeries::from_components(gamma);
    gamma = std::move(next);
  }
  throw std::logic_error("Picard iteration did not stabilise within N+1 rounds");
}

namespace detail {

inline TangentVector flow_jet_difference(const VectorField& d1, const VectorField& d2, const Point& x0, unsigned n) {
  if (d1.num_vars() != d2.num_vars()) throw dimension_error("fields have different dimension");
  if (n < 1) throw argument_error("jet defect needs n >= 1");
  const Jet j1 = flow_jet(d1, x0, n + 1), j2 = flow_jet(d2, x0, n + 1);
  for (unsigned i = 0; i <= n; ++i)
    if (j1.coords[i] != j2.coords[i])
      throw precondition_error("flow jets differ at order " + std::to_string(i), static_cast<std::ptrdiff_t>(i));
  return jet_difference(j2, j1);
}

}  // namespace detail

/// Tangent vector tau_{D2}^{n+1}(x0) - tau_{D1}^{n+1}(x0); requires the
/// n-jets to agree at x0. Throws precondition_error naming the first
/// order where they differ. The result is checked against
/// [D1,D2]^{(n+1)}(x0); a mismatch is a logic_error.
inline TangentVector jet_defect(const VectorField& d1, const VectorField& d2, const Point& x0, unsigned n) {
  TangentVector v = detail::flow_jet_difference(d1, d2, x0, n);
  if (evaluate(iterated_bracket(d1, d2, n + 1), x0) != v.vec)
    throw std::logic_error("jet defect differs from the iterated bracket at " + to_string(x0));
  return v;
}

/// Three independent computations of the (n+1)-jet defect.
struct DjReport {
  TangentVector jet_difference;      // (a) affine difference of flow jets
  Point derivation_power;            // (b) ((D2^{n+1} - D1^{n+1}) x_k)(x0)
  Point bracket;                     // (c) [D1,D2]^{(n+1)}|_{x0}
  bool agree = false;
};

inline DjReport verify_dj(const VectorField& d1, const VectorField& d2, const Point& x0, unsigned n) {
  DjReport rep;
  rep.jet_difference = detail::flow_jet_difference(d1, d2, x0, n);
  const std::size_t m = d1.num_vars();
  for (std::size_t k = 0; k < m; ++k) {
    const Poly xk = Poly::variable(m, k);
    const Poly diff = apply_derivation_power(d2, xk, n + 1) - apply_derivation_power(d1, xk, n + 1);
    rep.derivation_power.push_back(evaluate(diff, x0));
  }
  rep.bracket = evaluate(iterated_bracket(d1, d2, n + 1), x0);
  rep.agree = rep.jet_difference.vec == rep.derivation_power && rep.derivation_power == rep.bracket;
  return rep;
}

// ---------------------------------------------------------------------------
// Flow invariance of rank strata.

struct MinorViolation {
  std::vector<std::size_t> rows, cols;
  std::size_t first_nonzero_order = 0;
  Rational coefficient;
};

struct InvarianceReport {
  std::size_t rank = 0;
  std::size_t minors_checked = 0;
  std::vector<MinorViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// D = sum_k combo[k] * D_k is a section of F by construction. Every
/// (r+1)-minor of the generator matrix, r = rank at x0, must vanish along
/// the truncated integral curve of D through x0.
inline InvarianceReport stratum_invariance_check(const Distribution& f, const std::vector<Poly>& combo,
                                                 const Point& x0, unsigned order = 10) {
  if (combo.size() != f.size()) throw dimension_error("combination has wrong number of coefficients");
  if (x0.size() != f.num_vars) throw dimension_error("point has wrong dimension");
  VectorField d(f.num_vars);
  for (std::size_t k = 0; k < f.size(); ++k) d += combo[k] * f.gens[k];

  InvarianceReport rep;
  rep.rank = rank_at(f, x0);
  const auto minors = generator_minors(f, rep.rank + 1);
  rep.minors_checked = minors.size();
  if (minors.empty()) return rep;
  const TruncSeries gamma = flow_series_picard(d, x0, order);
  for (const auto& mnr : minors) {
    const auto along = poly_compose_series(mnr.value, gamma);
    for (std::size_t i = 0; i <= order; ++i)
      if (!along[i].is_zero()) {
        rep.violations.push_back({mnr.rows, mnr.cols, i, along[i]});
        break;
      }
  }
  return rep;
}

}  // namespace jetlift
