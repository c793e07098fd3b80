#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "vector_field.hpp"

namespace jetlift {

/// F = <D_1, ..., D_s> as a subsheaf of T_X, presented by generators.
struct Distribution {
  std::size_t num_vars = 0;
  std::vector<VectorField> gens;

  Distribution() = default;
  Distribution(std::size_t m, std::vector<VectorField> g) : num_vars(m), gens(std::move(g)) {
    for (const auto& d : gens)
      if (d.num_vars() != num_vars) throw dimension_error("generator has wrong number of variables");
  }
  std::size_t size() const { return gens.size(); }
};

/// m x s matrix whose column j is D_j evaluated at x.
inline linalg::Matrix generator_values(const Distribution& f, const Point& x) {
  if (x.size() != f.num_vars) throw dimension_error("point has wrong dimension");
  std::vector<linalg::Vector> cols;
  for (const auto& d : f.gens) cols.push_back(evaluate(d, x));
  return linalg::from_columns(cols, f.num_vars);
}

/// rank(F|_x -> T_X|_x)
inline std::size_t rank_at(const Distribution& f, const Point& x) {
  if (x.size() != f.num_vars) throw dimension_error("point has wrong dimension");
  if (f.gens.empty()) return 0;
  return linalg::rank(generator_values(f, x));
}

// ---------------------------------------------------------------------------
// Minors of the generator component matrix.

using PolyMatrix = std::vector<std::vector<Poly>>;

inline PolyMatrix generator_matrix(const Distribution& f) {
  PolyMatrix m(f.num_vars);
  for (std::size_t i = 0; i < f.num_vars; ++i)
    for (const auto& d : f.gens) m[i].push_back(d[i]);
  return m;
}

/// Cofactor expansion along the first row; the minors here are tiny.
inline Poly determinant(const PolyMatrix& a, std::size_t num_vars) {
  const std::size_t n = a.size();
  if (n == 0) return Poly::constant(num_vars, Rational(1));
  if (n == 1) return a[0][0];
  Poly det(num_vars);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    PolyMatrix sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      sub.push_back(std::move(row));
    }
    Poly term = a[0][j] * determinant(sub, num_vars);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

struct Minor {
  std::vector<std::size_t> rows, cols;
  Poly value;
};

/// All size x size minors of the generator matrix.
inline std::vector<Minor> generator_minors(const Distribution& f, std::size_t size) {
  std::vector<Minor> out;
  const PolyMatrix m = generator_matrix(f);
  for (const auto& rows : combinations(f.num_vars, size))
    for (const auto& cols : combinations(f.size(), size)) {
      PolyMatrix sub;
      for (auto r : rows) {
        std::vector<Poly> row;
        for (auto c : cols) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
      }
      out.push_back({rows, cols, determinant(sub, f.num_vars)});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Involutivity certificates.

/// [D_i, D_j] = sum_k coeffs[k] * D_k for one pair i < j.
struct BracketRelation {
  std::size_t i = 0, j = 0;
  std::vector<Poly> coeffs;
};

struct InvolutivityCertificate {
  std::vector<BracketRelation> relations;
  unsigned degree_bound = 0;
};

/// No certificate of the given degree and no counterexample on the sample grid.
struct NotFoundUpTo {
  unsigned degree_bound = 0;
};

/// A point where [D_i, D_j](x) leaves span{D_k(x)}: a proof of non-involutivity.
struct CounterexamplePoint {
  std::size_t i = 0, j = 0;
  Point point;
};

using InvolutivityVerdict = std::variant<InvolutivityCertificate, NotFoundUpTo, CounterexamplePoint>;

/// Monomials of total degree <= d in m variables, graded order.
inline std::vector<Exponents> monomials_up_to(std::size_t m, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(m, 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == m) {
      out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[k] = a;
      self(self, k + 1, left - a);
    }
    e[k] = 0;
  };
  rec(rec, 0, static_cast<int>(d));
  return out;
}

/// Re-expands a relation; true iff it reproduces the bracket exactly.
inline bool relation_holds(const Distribution& f, const BracketRelation& rel) {
  VectorField sum(f.num_vars);
  for (std::size_t k = 0; k < f.size(); ++k) sum += rel.coeffs.at(k) * f.gens[k];
  return sum == lie_bracket(f.gens.at(rel.i), f.gens.at(rel.j));
}

/// Coefficients c_k of degree <= d with sum_k c_k D_k = target, if any.
inline std::optional<std::vector<Poly>> solve_module_combination(const Distribution& f, const VectorField& target,
                                                                 unsigned d) {
  const std::size_t m = f.num_vars, s = f.size();
  const auto basis = monomials_up_to(m, d);
  const std::size_t unknowns = s * basis.size();

  // One equation per (component, monomial) appearing anywhere.
  std::map<std::pair<std::size_t, Exponents>, std::size_t> row_of;
  std::vector<std::map<std::size_t, Rational>> rows;
  linalg::Vector rhs;
  auto row = [&](std::size_t comp, const Exponents& e) -> std::size_t {
    auto key = std::make_pair(comp, e);
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    rows.emplace_back();
    rhs.emplace_back(0);
    return row_of.emplace(key, rows.size() - 1).first->second;
  };
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (std::size_t comp = 0; comp < m; ++comp)
        for (const auto& [e, c] : f.gens[k][comp].terms()) {
          Exponents sum = e;
          for (std::size_t v = 0; v < m; ++v) sum[v] += basis[b][v];
          rows[row(comp, sum)][k * basis.size() + b] += c;
        }
  for (std::size_t comp = 0; comp < m; ++comp)
    for (const auto& [e, c] : target[comp].terms()) rhs[row(comp, e)] += c;

  linalg::Matrix a(rows.size(), linalg::Vector(unknowns));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [col, c] : rows[r]) a[r][col] = c;
  auto sol = linalg::solve(a, rhs, unknowns);
  if (!sol) return std::nullopt;
  std::vector<Poly> coeffs(s, Poly(m));
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t b = 0; b < basis.size(); ++b) coeffs[k].add_term(basis[b], (*sol)[k * basis.size() + b]);
  return coeffs;
}

/// Sample points ordered by max-norm then lexicographically, so the
/// origin comes first. Coordinates range over {-radius, ..., radius}.
inline std::vector<Point> sample_grid(std::size_t m, int radius) {
  std::vector<std::vector<int>> pts;
  std::vector<int> cur(m, -radius);
  while (true) {
    pts.push_back(cur);
    std::size_t k = m;
    while (k > 0 && cur[k - 1] == radius) cur[--k] = -radius;
    if (k == 0) break;
    ++cur[k - 1];
  }
  auto norm = [](const std::vector<int>& p) {
    int n = 0;
    for (int c : p) n = std::max(n, c < 0 ? -c : c);
    return n;
  };
  std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return norm(a) < norm(b); });
  std::vector<Point> out;
  for (const auto& p : pts) {
    Point q;
    for (int c : p) q.emplace_back(c);
    out.push_back(std::move(q));
  }
  return out;
}

/// True when [D_i,D_j](x) is outside span{D_k(x)}.
inline bool bracket_leaves_span(const Distribution& f, const VectorField& bracket, const Point& x) {
  auto cols = std::vector<linalg::Vector>{};
  for (const auto& d : f.gens) cols.push_back(evaluate(d, x));
  const std::size_t r = cols.empty() ? 0 : linalg::rank(linalg::from_columns(cols, f.num_vars));
  cols.push_back(evaluate(bracket, x));
  return linalg::rank(linalg::from_columns(cols, f.num_vars)) > r;
}

/// Bounded-degree involutivity check: an exact certificate, a definitive
/// counterexample point, or an inconclusive verdict.
inline InvolutivityVerdict involutivity_certificate(const Distribution& f, unsigned degree_bound,
                                                    int grid_radius = 2) {
  InvolutivityCertificate cert;
  cert.degree_bound = degree_bound;
  bool complete = true;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const VectorField b = lie_bracket(f.gens[i], f.gens[j]);
      auto coeffs = solve_module_combination(f, b, degree_bound);
      if (coeffs) {
        BracketRelation rel{i, j, std::move(*coeffs)};
        if (!relation_holds(f, rel)) throw std::logic_error("certificate failed re-expansion");
        cert.relations.push_back(std::move(rel));
        continue;
      }
      complete = false;
      for (const auto& x : sample_grid(f.num_vars, grid_radius))
        if (bracket_leaves_span(f, b, x)) return CounterexamplePoint{i, j, x};
    }
  if (complete) return cert;
  return NotFoundUpTo{degree_bound};
}

// ---------------------------------------------------------------------------
// Rank strata on a rational grid.

struct GridAxis {
  Rational start, stop, step;
};

struct StratumReport {
  std::vector<GridAxis> grid;
  std::map<std::size_t, std::vector<Point>> strata;  // rank -> sampled points of X_r
};

inline std::vector<Point> grid_points(const std::vector<GridAxis>& grid) {
  std::vector<std::vector<Rational>> axes;
  for (const auto& a : grid) {
    if (a.step.sign() <= 0) throw argument_error("grid step must be positive");
    std::vector<Rational> vals;
    for (Rational v = a.start; v <= a.stop; v += a.step) vals.push_back(v);
    if (vals.empty()) throw argument_error("grid axis is empty");
    axes.push_back(std::move(vals));
  }
  std::vector<Point> pts{Point{}};
  for (const auto& vals : axes) {
    std::vector<Point> next;
    for (const auto& p : pts)
      for (const auto& v : vals) {
        Point q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

inline StratumReport strata_sample(const Distribution& f, const std::vector<GridAxis>& grid) {
  if (grid.empty()) throw argument_error("empty grid");
  if (grid.size() != f.num_vars) throw dimension_error("grid has wrong number of axes");
  StratumReport rep;
  rep.grid = grid;
  for (const auto& p : grid_points(grid)) rep.strata[rank_at(f, p)].push_back(p);
  return rep;
}

}  // namespace jetlift
