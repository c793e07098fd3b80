#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace jetlift {

/// D = sum_k a_k d/dx_k with polynomial (or Laurent) components a_k,
/// acting on functions as the derivation f -> sum_k a_k df/dx_k.
template <class P>
class basic_vector_field {
 public:
  explicit basic_vector_field(std::size_t num_vars = 0)
      : n_(num_vars), comps_(num_vars, P(num_vars)) {}
  explicit basic_vector_field(std::vector<P> components) : n_(components.size()), comps_(std::move(components)) {
    for (const auto& a : comps_)
      if (a.num_vars() != n_) throw dimension_error("vector field component has wrong number of variables");
  }

  /// d/dx_k
  static basic_vector_field coordinate(std::size_t num_vars, std::size_t k) {
    basic_vector_field d(num_vars);
    d.comps_.at(k) = P::constant(num_vars, Rational(1));
    return d;
  }

  std::size_t num_vars() const { return n_; }
  const std::vector<P>& components() const { return comps_; }
  const P& operator[](std::size_t k) const { return comps_.at(k); }
  P& operator[](std::size_t k) { return comps_.at(k); }

  bool is_zero() const {
    for (const auto& a : comps_)
      if (!a.is_zero()) return false;
    return true;
  }

  basic_vector_field& operator+=(const basic_vector_field& o) {
    check(o);
    for (std::size_t k = 0; k < n_; ++k) comps_[k] += o.comps_[k];
    return *this;
  }
  basic_vector_field& operator-=(const basic_vector_field& o) {
    check(o);
    for (std::size_t k = 0; k < n_; ++k) comps_[k] -= o.comps_[k];
    return *this;
  }
  friend basic_vector_field operator+(basic_vector_field a, const basic_vector_field& b) { return a += b; }
  friend basic_vector_field operator-(basic_vector_field a, const basic_vector_field& b) { return a -= b; }
  basic_vector_field operator-() const { return (*this) * Rational(-1); }

  /// Scaling by a function (module action of O on vector fields).
  friend basic_vector_field operator*(const P& g, basic_vector_field d) {
    if (g.num_vars() != d.n_) throw dimension_error("function and field have different dimension");
    for (auto& a : d.comps_) a = g * a;
    return d;
  }
  friend basic_vector_field operator*(basic_vector_field d, const Rational& s) {
    for (auto& a : d.comps_) a *= s;
    return d;
  }

  friend bool operator==(const basic_vector_field& a, const basic_vector_field& b) {
    return a.n_ == b.n_ && a.comps_ == b.comps_;
  }

 private:
  void check(const basic_vector_field& o) const {
    if (o.n_ != n_) throw dimension_error("vector fields have different dimension");
  }
  std::size_t n_;
  std::vector<P> comps_;
};

using VectorField = basic_vector_field<Poly>;
using LaurentField = basic_vector_field<Laurent>;

/// Df = sum_k a_k * df/dx_k
template <class P>
P apply_derivation(const basic_vector_field<P>& d, const P& f) {
  if (f.num_vars() != d.num_vars()) throw dimension_error("field and function have different dimension");
  P r(f.num_vars());
  for (std::size_t k = 0; k < d.num_vars(); ++k) {
    if (d[k].is_zero()) continue;
    P df = partial(f, k);
    if (!df.is_zero()) r += d[k] * df;
  }
  return r;
}

/// D^i f, i-fold application.
template <class P>
P apply_derivation_power(const basic_vector_field<P>& d, P f, unsigned power) {
  for (unsigned i = 0; i < power; ++i) f = apply_derivation(d, f);
  return f;
}

/// [D1, D2] with component k equal to D1(D2^k) - D2(D1^k).
template <class P>
basic_vector_field<P> lie_bracket(const basic_vector_field<P>& d1, const basic_vector_field<P>& d2) {
  if (d1.num_vars() != d2.num_vars()) throw dimension_error("vector fields have different dimension");
  std::vector<P> comps;
  comps.reserve(d1.num_vars());
  for (std::size_t k = 0; k < d1.num_vars(); ++k)
    comps.push_back(apply_derivation(d1, d2[k]) - apply_derivation(d2, d1[k]));
  return basic_vector_field<P>(std::move(comps));
}

/// [D1,D2]^(2) = [D1,D2] and [D1,D2]^(n) = [D1, [D1,D2]^(n-1)].
template <class P>
basic_vector_field<P> iterated_bracket(const basic_vector_field<P>& d1, const basic_vector_field<P>& d2,
                                       unsigned n) {
  if (n < 2) throw argument_error("iterated bracket needs n >= 2");
  auto b = lie_bracket(d1, d2);
  for (unsigned k = 3; k <= n; ++k) b = lie_bracket(d1, b);
  return b;
}

/// D|_x as a vector of rationals.
template <class P>
std::vector<Rational> evaluate(const basic_vector_field<P>& d, const std::vector<Rational>& x) {
  std::vector<Rational> v;
  v.reserve(d.num_vars());
  for (const auto& a : d.components()) v.push_back(evaluate(a, x));
  return v;
}

inline LaurentField to_laurent(const VectorField& d) {
  std::vector<Laurent> c;
  for (const auto& a : d.components()) c.push_back(to_laurent(a));
  return LaurentField(std::move(c));
}

template <class P>
std::string to_string(const basic_vector_field<P>& d, const std::vector<std::string>& names) {
  std::string s = "(";
  for (std::size_t k = 0; k < d.num_vars(); ++k) {
    if (k) s += ", ";
    s += to_string(d[k], names);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Time-extended fields on X x C. The last variable is the time t.

enum class TimeClass { TimeDependentInF, ConstantFlow, Neither };

inline const char* to_string(TimeClass c) {
  switch (c) {
    case TimeClass::TimeDependentInF: return "TimeDependentInF";
    case TimeClass::ConstantFlow: return "ConstantFlow";
    case TimeClass::Neither: return "Neither";
  }
  return "?";
}

/// A vector field on m+1 variables whose last variable is time. The class
/// is derived from the time component, never stored.
struct TimeField {
  VectorField base;

  std::size_t time_index() const {
    if (base.num_vars() == 0) throw dimension_error("time field needs at least the time variable");
    return base.num_vars() - 1;
  }
  friend bool operator==(const TimeField&, const TimeField&) = default;
};

/// Time component identically 0, identically 1, or otherwise.
inline TimeClass time_component_class(const TimeField& d) {
  const Poly& a = d.base[d.time_index()];
  if (a.is_zero()) return TimeClass::TimeDependentInF;
  if (a == Poly::constant(a.num_vars(), Rational(1))) return TimeClass::ConstantFlow;
  return TimeClass::Neither;
}

/// D' + d/dt for a field D' with vanishing time component.
inline TimeField extend_constant_flow(const VectorField& dp) {
  TimeField in{dp};
  if (time_component_class(in) != TimeClass::TimeDependentInF)
    throw classification_error("time component of the input field is not identically zero");
  VectorField out = dp;
  out[in.time_index()] = Poly::constant(dp.num_vars(), Rational(1));
  return TimeField{std::move(out)};
}

// ---------------------------------------------------------------------------
// Graph embedding of a morphism Y -> X into Y x X.

struct GraphEmbedding {
  std::vector<Poly> graph_map;          // y -> (y, f(y)), p+m components in p variables
  std::vector<VectorField> generators;  // (0, ..., 0, a_1, ..., a_m) on p+m variables
};

/// Generators on X become fields on Y x X with zero Y-part; their
/// components are rewritten in the last m variables.
inline GraphEmbedding graph_embed(const std::vector<Poly>& f, std::size_t p,
                                  const std::vector<VectorField>& gens) {
  const std::size_t m = f.size();
  for (const auto& fk : f)
    if (fk.num_vars() != p) throw dimension_error("morphism component has wrong number of Y-variables");
  GraphEmbedding out;
  for (std::size_t i = 0; i < p; ++i) out.graph_map.push_back(Poly::variable(p, i));
  for (const auto& fk : f) out.graph_map.push_back(fk);

  std::vector<std::size_t> shift(m);
  for (std::size_t k = 0; k < m; ++k) shift[k] = p + k;
  for (const auto& d : gens) {
    if (d.num_vars() != m) throw dimension_error("generator has wrong number of X-variables");
    VectorField e(p + m);
    for (std::size_t k = 0; k < m; ++k) e[p + k] = remap_variables(d[k], p + m, shift);
    out.generators.push_back(std::move(e));
  }
  return out;
}

}  // namespace jetlift
