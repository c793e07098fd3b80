#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace jetlift::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

struct Echelon {
  Matrix rows;                      // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
inline Echelon rref(Matrix a) {
  Echelon out;
  if (a.empty()) return out;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = a[r][c].inverse();
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

inline std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

/// Columns given as vectors; convenience for span/rank tests.
inline Matrix from_columns(const std::vector<Vector>& cols, std::size_t height) {
  Matrix m(height, Vector(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != height) throw dimension_error("column has wrong height");
    for (std::size_t i = 0; i < height; ++i) m[i][j] = cols[j][i];
  }
  return m;
}

/// Solves a x = b for `unknowns` variables (a may have no rows). Free
/// variables are set to zero, so the answer is canonical for a given column
/// order. Returns nullopt when inconsistent.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b, std::size_t unknowns) {
  if (a.size() != b.size()) throw dimension_error("right-hand side has wrong length");
  for (const auto& row : a)
    if (row.size() != unknowns) throw dimension_error("matrix row has wrong length");
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  if (aug.empty()) return Vector(unknowns);
  Echelon e = rref(std::move(aug));
  Vector x(unknowns);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == unknowns) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][unknowns];
  }
  return x;
}

inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  return solve(a, b, a.empty() ? 0 : a[0].size());
}

/// Normal form of b modulo the column space of a: zero iff b is in the span.
inline Vector reduce_modulo_columns(const Matrix& a, Vector b) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Matrix t(cols, Vector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  Echelon e = rref(std::move(t));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const Rational f = b[e.pivots[r]];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) b[j] -= f * e.rows[r][j];
  }
  return b;
}

}  // namespace jetlift::linalg
