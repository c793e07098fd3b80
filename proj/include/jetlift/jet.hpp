#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace jetlift {

using Point = std::vector<Rational>;

/// A point of Jet^n(X) in a chart: coords[i] = gamma^(i)(0), so coords[0]
/// is the basepoint. Derivative coordinates, not Taylor coefficients.
struct Jet {
  std::size_t dim = 0;
  std::vector<Point> coords;

  Jet() = default;
  Jet(std::size_t dim_, std::vector<Point> coords_) : dim(dim_), coords(std::move(coords_)) {
    if (coords.empty()) throw argument_error("a jet needs at least its basepoint");
    for (const auto& x : coords)
      if (x.size() != dim) throw dimension_error("jet coordinate has wrong dimension");
  }

  std::size_t order() const { return coords.size() - 1; }
  const Point& basepoint() const { return coords.front(); }
  friend bool operator==(const Jet&, const Jet&) = default;
};

/// Element of T_X at `basepoint`.
struct TangentVector {
  Point basepoint;
  Point vec;

  TangentVector() = default;
  TangentVector(Point base, Point v) : basepoint(std::move(base)), vec(std::move(v)) {
    if (basepoint.size() != vec.size()) throw dimension_error("tangent vector and basepoint differ in dimension");
  }
  bool is_zero() const {
    for (const auto& c : vec)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const TangentVector&, const TangentVector&) = default;
};

inline TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  if (a.basepoint != b.basepoint) throw precondition_error("tangent vectors live at different points");
  Point v = a.vec;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.vec[k];
  return {a.basepoint, v};
}

/// pi_{n,m}: keep x_0, ..., x_m.
inline Jet jet_project(const Jet& j, std::size_t target_order) {
  if (target_order > j.order()) throw argument_error("cannot project a jet to a higher order");
  return Jet(j.dim, std::vector<Point>(j.coords.begin(), j.coords.begin() + static_cast<std::ptrdiff_t>(target_order) + 1));
}

/// Difference of two (n+1)-jets with equal n-jets: the tangent vector
/// x_{n+1}(j1) - x_{n+1}(j2) at the common basepoint.
inline TangentVector jet_difference(const Jet& j1, const Jet& j2) {
  if (j1.dim != j2.dim || j1.order() != j2.order()) throw dimension_error("jets differ in dimension or order");
  const std::size_t top = j1.order();
  for (std::size_t i = 0; i < top; ++i)
    if (j1.coords[i] != j2.coords[i])
      throw precondition_error("jets differ below the top order at index " + std::to_string(i),
                               static_cast<std::ptrdiff_t>(i));
  Point v(j1.dim);
  for (std::size_t k = 0; k < j1.dim; ++k) v[k] = j1.coords[top][k] - j2.coords[top][k];
  return {j1.basepoint(), v};
}

/// Acts on the top coordinate only; the fibre of Jet^{n+1} -> Jet^n is an
/// affine space over T_X at the basepoint.
inline Jet jet_translate(const Jet& j, const TangentVector& v) {
  if (v.basepoint != j.basepoint()) throw precondition_error("translation vector lives at a different basepoint");
  if (v.vec.size() != j.dim) throw dimension_error("translation vector has wrong dimension");
  if (j.order() == 0) throw argument_error("order-0 jets carry no translation structure");
  Jet r = j;
  for (std::size_t k = 0; k < j.dim; ++k) r.coords.back()[k] += v.vec[k];
  return r;
}

/// x_i = i! v_i
inline TruncSeries jet_to_series(const Jet& j) {
  TruncSeries s(j.dim, j.order());
  for (std::size_t i = 0; i <= j.order(); ++i) {
    const Rational inv = factorial(static_cast<unsigned>(i)).inverse();
    for (std::size_t k = 0; k < j.dim; ++k) s.coeffs[i][k] = j.coords[i][k] * inv;
  }
  return s;
}

inline Jet series_to_jet(const TruncSeries& s) {
  std::vector<Point> coords(s.order + 1, Point(s.dim));
  for (std::size_t i = 0; i <= s.order; ++i) {
    const Rational f = factorial(static_cast<unsigned>(i));
    for (std::size_t k = 0; k < s.dim; ++k) coords[i][k] = s.coeffs[i][k] * f;
  }
  return Jet(s.dim, std::move(coords));
}

inline std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ",";
    s += p[k].to_string();
  }
  return s + ")";
}

/// `((a,b),(c,d),...)`, one inner tuple per order.
inline std::string to_string(const Jet& j) {
  std::string s = "(";
  for (std::size_t i = 0; i < j.coords.size(); ++i) {
    if (i) s += ",";
    s += to_string(j.coords[i]);
  }
  return s + ")";
}

}  // namespace jetlift
