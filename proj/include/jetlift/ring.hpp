#pragma once

#include "rational.hpp"

namespace jetlift {

/// Coefficient-ring hooks used by the generic evaluation and series code.
/// A specialization supplies neutral elements shaped like a sample value
/// (polynomials need their variable count, series their order) and a
/// partial inverse that throws when the argument is not a unit.
template <class T>
struct ring_traits;

template <>
struct ring_traits<Rational> {
  static Rational zero_like(const Rational&) { return Rational(0); }
  static Rational one_like(const Rational&) { return Rational(1); }
  static Rational from_rational(const Rational& r, const Rational&) { return r; }
  static Rational inverse(const Rational& r) { return r.inverse(); }
  static bool is_zero(const Rational& r) { return r.is_zero(); }
};

template <class T>
T zero_like(const T& sample) { return ring_traits<T>::zero_like(sample); }
template <class T>
T one_like(const T& sample) { return ring_traits<T>::one_like(sample); }
template <class T>
T unit_inverse(const T& x) { return ring_traits<T>::inverse(x); }
template <class T>
bool ring_is_zero(const T& x) { return ring_traits<T>::is_zero(x); }

/// x^e for signed e; negative exponents go through `unit_inverse`.
template <class T>
T ring_pow(const T& x, int e) {
  if (e < 0) return ring_pow(unit_inverse(x), -e);
  T r = one_like(x), b = x;
  for (unsigned k = static_cast<unsigned>(e); k; k >>= 1) {
    if (k & 1u) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

}  // namespace jetlift
