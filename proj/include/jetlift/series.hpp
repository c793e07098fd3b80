#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "ring.hpp"

namespace jetlift {

/// Scalar power series c_0 + c_1 t + ... + c_N t^N, truncated mod t^{N+1}.
/// Products truncate eagerly. T is any ring with `ring_traits`.
template <class T>
class series {
 public:
  series(std::size_t order, const T& zero) : c_(order + 1, zero) {}
  explicit series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw argument_error("series needs at least one coefficient");
  }

  static series constant(std::size_t order, const T& value) {
    series s(order, zero_like(value));
    s.c_[0] = value;
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const T& operator[](std::size_t i) const { return c_.at(i); }
  T& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<T>& coeffs() const { return c_; }

  series& operator+=(const series& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  series& operator-=(const series& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    return *this;
  }
  friend series operator+(series a, const series& b) { return a += b; }
  friend series operator-(series a, const series& b) { return a -= b; }

  friend series operator*(const series& a, const series& b) {
    a.check(b);
    const std::size_t n = a.c_.size();
    series r(n - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < n; ++i) {
      if (ring_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (ring_is_zero(b.c_[j])) continue;
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend series operator*(series a, const Rational& s) {
    for (auto& c : a.c_) c = c * ring_traits<T>::from_rational(s, c);
    return a;
  }

  friend bool operator==(const series& a, const series& b) { return a.c_ == b.c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!ring_is_zero(c)) return false;
    return true;
  }

 private:
  void check(const series& o) const {
    if (o.c_.size() != c_.size()) throw dimension_error("series have different truncation orders");
  }
  std::vector<T> c_;
};

/// Multiplicative inverse; requires a unit constant term.
template <class T>
series<T> inverse(const series<T>& s) {
  const std::size_t n = s.order();
  const T inv0 = unit_inverse(s[0]);
  series<T> r(n, zero_like(s[0]));
  r[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    T acc = zero_like(s[0]);
    for (std::size_t j = 1; j <= k; ++j) acc = acc + s[j] * r[k - j];
    r[k] = zero_like(s[0]) - acc * inv0;
  }
  return r;
}

template <class T>
struct ring_traits<series<T>> {
  static series<T> zero_like(const series<T>& s) {
    return series<T>(s.order(), jetlift::zero_like(s[0]));
  }
  static series<T> one_like(const series<T>& s) {
    return series<T>::constant(s.order(), jetlift::one_like(s[0]));
  }
  static series<T> from_rational(const Rational& r, const series<T>& s) {
    return series<T>::constant(s.order(), ring_traits<T>::from_rational(r, s[0]));
  }
  static series<T> inverse(const series<T>& s) { return jetlift::inverse(s); }
  static bool is_zero(const series<T>& s) { return s.is_zero(); }
};

/// Antiderivative vanishing at 0, truncated to the same order.
inline series<Rational> integrate(const series<Rational>& s) {
  series<Rational> r(s.order(), Rational(0));
  for (std::size_t i = 1; i <= s.order(); ++i) r[i] = s[i - 1] / Rational(static_cast<long>(i));
  return r;
}

/// Vector-valued truncated series: an arc v_0 + v_1 t + ... + v_N t^N in Q^m.
struct TruncSeries {
  std::size_t dim = 0;
  std::size_t order = 0;
  std::vector<std::vector<Rational>> coeffs;  // coeffs[i][k]: t^i coefficient of coordinate k

  TruncSeries() = default;
  TruncSeries(std::size_t dim_, std::size_t order_)
      : dim(dim_), order(order_), coeffs(order_ + 1, std::vector<Rational>(dim_)) {}

  series<Rational> component(std::size_t k) const {
    if (k >= dim) throw index_error("series component out of range");
    std::vector<Rational> c;
    for (const auto& v : coeffs) c.push_back(v[k]);
    return series<Rational>(std::move(c));
  }
  std::vector<series<Rational>> components() const {
    std::vector<series<Rational>> out;
    for (std::size_t k = 0; k < dim; ++k) out.push_back(component(k));
    return out;
  }
  static TruncSeries from_components(const std::vector<series<Rational>>& comps) {
    if (comps.empty()) throw argument_error("no series components");
    TruncSeries s(comps.size(), comps[0].order());
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comps[k].order() != s.order) throw dimension_error("component orders differ");
      for (std::size_t i = 0; i <= s.order; ++i) s.coeffs[i][k] = comps[k][i];
    }
    return s;
  }
  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;
};

/// f(gamma(t)) mod t^{N+1} over any coefficient ring.
template <class Policy, class T>
series<T> compose_series(const basic_poly<Policy>& f, const std::vector<series<T>>& gamma) {
  if (gamma.size() != f.num_vars()) throw dimension_error("series dimension does not match polynomial");
  if (gamma.empty()) throw dimension_error("cannot infer series order from zero components");
  return evaluate(f, gamma, one_like(gamma[0]));
}

/// Truncation of f(gamma(t)) to gamma's order, exact coefficients.
inline series<Rational> poly_compose_series(const Poly& f, const TruncSeries& gamma) {
  if (gamma.dim != f.num_vars()) throw dimension_error("series dimension does not match polynomial");
  if (gamma.dim == 0) return series<Rational>::constant(gamma.order, f.constant_term());
  return compose_series(f, gamma.components());
}

}  // namespace jetlift
