#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "ring.hpp"

namespace jetlift {

using Exponents = std::vector<int>;

/// Graded lexicographic order, largest first: higher total degree wins,
/// ties broken by the first differing exponent.
struct grlex_greater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return a > b;
  }
};

struct natural_exponents {
  static constexpr bool allow_negative = false;
};
struct signed_exponents {
  static constexpr bool allow_negative = true;
};

/// Sparse multivariate polynomial over Q. With `signed_exponents` the same
/// type holds Laurent polynomials. No zero coefficient is ever stored, so
/// structural equality is mathematical equality.
template <class Policy>
class basic_poly {
 public:
  using term_map = std::map<Exponents, Rational, grlex_greater>;

  explicit basic_poly(std::size_t num_vars = 0) : n_(num_vars) {}

  static basic_poly constant(std::size_t num_vars, const Rational& c) {
    basic_poly p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
  }
  static basic_poly variable(std::size_t num_vars, std::size_t k) {
    if (k >= num_vars) throw index_error("variable index out of range");
    Exponents e(num_vars, 0);
    e[k] = 1;
    basic_poly p(num_vars);
    p.add_term(std::move(e), Rational(1));
    return p;
  }
  static basic_poly monomial(Exponents e, const Rational& c) {
    basic_poly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t num_vars() const { return n_; }
  const term_map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && is_zero_exponent(terms_.begin()->first));
  }
  Rational constant_term() const {
    auto it = terms_.find(Exponents(n_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c*x^e, merging with an existing term and dropping zeros.
  void add_term(Exponents e, const Rational& c) {
    if (e.size() != n_) throw dimension_error("exponent tuple has wrong length");
    if constexpr (!Policy::allow_negative) {
      for (int k : e)
        if (k < 0) throw argument_error("negative exponent in polynomial");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Highest total degree; INT_MIN for the zero polynomial.
  int total_degree() const {
    int d = INT_MIN;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
  }
  /// Lowest and highest exponent of variable k over all terms.
  std::pair<int, int> exponent_range(std::size_t k) const {
    if (k >= n_) throw index_error("variable index out of range");
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& [e, c] : terms_) {
      lo = std::min(lo, e[k]);
      hi = std::max(hi, e[k]);
    }
    return {lo, hi};
  }
  bool has_negative_exponent() const {
    for (const auto& [e, c] : terms_)
      for (int k : e)
        if (k < 0) return true;
    return false;
  }
  bool is_monomial() const { return terms_.size() == 1; }

  basic_poly& operator+=(const basic_poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  basic_poly& operator-=(const basic_poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  basic_poly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend basic_poly operator+(basic_poly a, const basic_poly& b) { return a += b; }
  friend basic_poly operator-(basic_poly a, const basic_poly& b) { return a -= b; }
  friend basic_poly operator*(basic_poly a, const Rational& s) { return a *= s; }
  friend basic_poly operator*(const Rational& s, basic_poly a) { return a *= s; }
  basic_poly operator-() const { return basic_poly(*this) *= Rational(-1); }

  friend basic_poly operator*(const basic_poly& a, const basic_poly& b) {
    a.check_same(b);
    basic_poly r(a.n_);
    Exponents e(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < a.n_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  basic_poly& operator*=(const basic_poly& o) { return *this = *this * o; }

  friend bool operator==(const basic_poly& a, const basic_poly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  static bool is_zero_exponent(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
  }
  void check_same(const basic_poly& o) const {
    if (o.n_ != n_) throw dimension_error("polynomials have different numbers of variables");
  }

  std::size_t n_;
  term_map terms_;
};

using Poly = basic_poly<natural_exponents>;
using Laurent = basic_poly<signed_exponents>;

/// Exact partial derivative with respect to variable k.
template <class Policy>
basic_poly<Policy> partial(const basic_poly<Policy>& f, std::size_t k) {
  if (k >= f.num_vars()) throw index_error("partial derivative index out of range");
  basic_poly<Policy> r(f.num_vars());
  for (const auto& [e, c] : f.terms()) {
    if (e[k] == 0) continue;
    Exponents d = e;
    d[k] -= 1;
    r.add_term(std::move(d), c * Rational(e[k]));
  }
  return r;
}

/// Drops every term of total degree above `max_degree`.
template <class Policy>
basic_poly<Policy> truncate_degree(const basic_poly<Policy>& f, int max_degree) {
  basic_poly<Policy> r(f.num_vars());
  for (const auto& [e, c] : f.terms())
    if (std::accumulate(e.begin(), e.end(), 0) <= max_degree) r.add_term(e, c);
  return r;
}

/// Moves variable i to slot `mapping[i]` of a ring with `num_vars` variables.
template <class Policy>
basic_poly<Policy> remap_variables(const basic_poly<Policy>& f, std::size_t num_vars,
                                   const std::vector<std::size_t>& mapping) {
  if (mapping.size() != f.num_vars()) throw dimension_error("variable mapping has wrong length");
  basic_poly<Policy> r(num_vars);
  for (const auto& [e, c] : f.terms()) {
    Exponents d(num_vars, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (mapping[i] >= num_vars) throw index_error("variable mapping out of range");
      d[mapping[i]] += e[i];
    }
    r.add_term(std::move(d), c);
  }
  return r;
}

inline Laurent to_laurent(const Poly& p) {
  Laurent r(p.num_vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c);
  return r;
}

/// Fails with argument_error when a negative exponent is present.
inline Poly to_poly(const Laurent& p) {
  if (p.has_negative_exponent()) throw argument_error("Laurent polynomial has a pole");
  Poly r(p.num_vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c);
  return r;
}

template <class Policy>
struct ring_traits<basic_poly<Policy>> {
  using P = basic_poly<Policy>;
  static P zero_like(const P& s) { return P(s.num_vars()); }
  static P one_like(const P& s) { return P::constant(s.num_vars(), Rational(1)); }
  static P from_rational(const Rational& r, const P& s) { return P::constant(s.num_vars(), r); }
  static bool is_zero(const P& p) { return p.is_zero(); }
  /// Only monomials are units (and only constants without negative exponents).
  static P inverse(const P& p) {
    if (!p.is_monomial()) throw argument_error("polynomial is not a unit");
    const auto& [e, c] = *p.terms().begin();
    Exponents neg(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) neg[k] = -e[k];
    return P::monomial(std::move(neg), c.inverse());
  }
};

/// Substitutes `values[k]` for variable k and sums in the ring of T.
/// `one` fixes the shape of the result (variable count, series order).
template <class Policy, class T>
T evaluate(const basic_poly<Policy>& f, const std::vector<T>& values, const T& one) {
  if (values.size() != f.num_vars()) throw dimension_error("point has wrong dimension");
  T result = zero_like(one);
  std::vector<std::map<int, T>> cache(values.size());
  auto power = [&](std::size_t k, int e) -> const T& {
    auto it = cache[k].find(e);
    if (it != cache[k].end()) return it->second;
    return cache[k].emplace(e, ring_pow(values[k], e)).first->second;
  };
  for (const auto& [e, c] : f.terms()) {
    T term = ring_traits<T>::from_rational(c, one);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0) term = term * power(k, e[k]);
    result = result + term;
  }
  return result;
}

/// Value at a rational point.
template <class Policy>
Rational evaluate(const basic_poly<Policy>& f, const std::vector<Rational>& point) {
  return evaluate(f, point, Rational(1));
}

/// Composition f(g_0, ..., g_{n-1}) with all g_k in a common ring.
template <class Policy, class Q>
basic_poly<Q> compose(const basic_poly<Policy>& f, const std::vector<basic_poly<Q>>& g,
                      std::size_t target_vars) {
  return evaluate(f, g, basic_poly<Q>::constant(target_vars, Rational(1)));
}

/// Canonical text, e.g. `3/2*x^2*y - y + 1`. Terms in graded lex order.
template <class Policy>
std::string to_string(const basic_poly<Policy>& f, const std::vector<std::string>& names) {
  if (names.size() != f.num_vars()) throw dimension_error("wrong number of variable names");
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (e[k] != 1) mono += "^" + std::to_string(e[k]);
    }
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    std::string body;
    if (mono.empty()) body = mag.to_string();
    else if (mag.is_one()) body = mono;
    else body = mag.to_string() + "*" + mono;
    if (first) out += (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

/// Default names x0, x1, ...
inline std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("x" + std::to_string(k));
  return names;
}

}  // namespace jetlift
