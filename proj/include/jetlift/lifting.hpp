#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cech.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "series.hpp"
#include "vector_field.hpp"

namespace jetlift {

// ---------------------------------------------------------------------------
// Scenario data: a two-chart curve Y, a target X with one or two charts, a
// morphism f: Y -> X, a presented subsheaf F of T_X, a first-order
// deformation sigma in generator coefficients and optional time-dependent
// perturbations of the local fields.

struct TargetAtlas {
  std::vector<std::string> vars;
  std::size_t charts = 1;
  std::vector<Laurent> transition;             // chart 0 -> chart 1, in chart-0 coordinates
  std::vector<Laurent> inverse;                // chart 1 -> chart 0, in chart-1 coordinates
  std::vector<std::vector<Laurent>> jacobian;  // declared d(transition)/dx; empty when not given
  std::size_t dim() const { return vars.size(); }
};

struct MorphismData {
  std::array<std::vector<Poly>, 2> charts;  // components of f, polynomials in the chart parameter
  bool graph = false;                       // lift along the graph Y -> Y x X
};

struct PresentedSheaf {
  std::array<std::vector<VectorField>, 2> gens;  // generators on the X-chart each Y-chart maps into
};

struct Scenario {
  CurveAtlas curve;
  TargetAtlas target;
  MorphismData morphism;
  PresentedSheaf sheaf;
  std::array<std::vector<Poly>, 2> sigma;    // generator coefficients in the chart parameter
  std::array<std::vector<Poly>, 2> perturb;  // d/dx_k coefficients in chart-0 X coordinates and t
  Window window;
  unsigned order = 4;
};

// ---------------------------------------------------------------------------
// Laurent maps between charts.

using LaurentMap = std::vector<Laurent>;

inline LaurentMap identity_map(std::size_t n) {
  LaurentMap id;
  for (std::size_t k = 0; k < n; ++k) id.push_back(Laurent::variable(n, k));
  return id;
}

/// f o g, both maps on n variables.
inline LaurentMap compose_maps(const LaurentMap& f, const LaurentMap& g, std::size_t n) {
  LaurentMap out;
  for (const auto& fk : f) out.push_back(compose(fk, g, n));
  return out;
}

inline std::vector<std::vector<Laurent>> jacobian_of(const LaurentMap& f) {
  std::vector<std::vector<Laurent>> j;
  for (const auto& fk : f) {
    std::vector<Laurent> row;
    for (std::size_t l = 0; l < fk.num_vars(); ++l) row.push_back(partial(fk, l));
    j.push_back(std::move(row));
  }
  return j;
}

/// Push-forward of a field along src_to_dst, written in destination
/// coordinates via dst_to_src.
inline LaurentField push_field(const LaurentField& v, const LaurentMap& src_to_dst, const LaurentMap& dst_to_src) {
  const std::size_t n = v.num_vars();
  const auto jac = jacobian_of(src_to_dst);
  std::vector<Laurent> vs;
  for (const auto& a : v.components()) vs.push_back(compose(a, dst_to_src, n));
  std::vector<Laurent> out(n, Laurent(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (jac[i][l].is_zero() || vs[l].is_zero()) continue;
      out[i] += compose(jac[i][l], dst_to_src, n) * vs[l];
    }
  return LaurentField(std::move(out));
}

/// Restriction of a function on a Z-chart to Y, as a Laurent polynomial in
/// the chart parameter.
inline Laurent on_curve(const Laurent& p, const std::vector<Laurent>& embedding) {
  return evaluate(p, embedding, Laurent::constant(1, Rational(1)));
}
inline Laurent on_curve(const Poly& p, const std::vector<Laurent>& embedding) {
  return on_curve(to_laurent(p), embedding);
}
template <class P>
std::vector<Laurent> on_curve(const basic_vector_field<P>& d, const std::vector<Laurent>& embedding) {
  std::vector<Laurent> v;
  for (const auto& a : d.components()) v.push_back(on_curve(a, embedding));
  return v;
}

/// Solves v = sum_j c_j g_j along the curve for Laurent c_j with exponents
/// in the window. Canonical (free unknowns zero) when not unique.
inline std::optional<Section> express_in_generators(const std::vector<Laurent>& v,
                                                    const std::vector<std::vector<Laurent>>& gens,
                                                    const Window& w) {
  std::map<std::pair<std::size_t, int>, std::size_t> row_of;
  std::vector<std::map<std::size_t, Rational>> rows;
  linalg::Vector rhs;
  auto row = [&](std::size_t comp, int e) {
    auto [it, fresh] = row_of.try_emplace({comp, e}, rows.size());
    if (fresh) {
      rows.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  };
  const std::size_t width = w.size();
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t comp = 0; comp < gens[j].size(); ++comp)
      for (const auto& [e, c] : gens[j][comp].terms())
        for (int u = w.lo; u <= w.hi; ++u) rows[row(comp, e[0] + u)][j * width + static_cast<std::size_t>(u - w.lo)] += c;
  for (std::size_t comp = 0; comp < v.size(); ++comp)
    for (const auto& [e, c] : v[comp].terms()) rhs[row(comp, e[0])] += c;
  linalg::Matrix a(rows.size(), linalg::Vector(gens.size() * width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [col, c] : rows[r]) a[r][col] = c;
  auto sol = linalg::solve(a, rhs, gens.size() * width);
  if (!sol) return std::nullopt;
  Section out(gens.size(), Laurent(1));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t u = 0; u < width; ++u) out[j].add_term({w.lo + static_cast<int>(u)}, (*sol)[j * width + u]);
  return out;
}

// ---------------------------------------------------------------------------
// Lifting setting: the scenario after time extension (and, if flagged,
// the graph embedding). Z-chart coordinates are [y] x_1..x_m t.

struct ZChart {
  std::vector<std::string> names;
  std::vector<Laurent> embedding;  // g: Y-chart -> Z-chart, univariate in the parameter
  std::vector<VectorField> gens;   // time-dependent generators of G restricted to F-part
  std::size_t id_coord = 0;        // Z coordinate that equals the curve parameter along Y
  std::size_t dim() const { return names.size(); }
  std::size_t time_index() const { return names.size() - 1; }
};

struct LiftSetting {
  CurveAtlas curve;
  std::array<ZChart, 2> charts;
  LaurentMap to_chart0;  // chart-1 coordinates -> chart-0 coordinates
  LaurentMap to_chart1;
  SheafTransition rule;
  Window window;
  int max_gen_degree = 1;
  std::array<TimeField, 2> initial_fields;
  unsigned order = 1;
  bool graph = false;
};

namespace detail {

inline Laurent param_poly(const Poly& p) { return to_laurent(p); }

/// Lifts a parameter polynomial c(z) to the function c(x_id) on the Z-chart.
inline Poly extend_coefficient(const Laurent& c, const ZChart& chart) {
  if (c.has_negative_exponent()) throw argument_error("generator coefficient has a pole on its chart");
  return remap_variables(to_poly(c), chart.dim(), {chart.id_coord});
}

inline VectorField extend_section(const Section& s, const ZChart& chart) {
  if (s.size() != chart.gens.size()) throw dimension_error("section has wrong number of generator coefficients");
  VectorField e(chart.dim());
  for (std::size_t k = 0; k < s.size(); ++k) e += extend_coefficient(s[k], chart) * chart.gens[k];
  return e;
}

/// The tangent vector sum_k s_k g_k along Y.
inline std::vector<Laurent> section_vector(const Section& s, const ZChart& chart) {
  std::vector<Laurent> v(chart.dim(), Laurent(1));
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto g = on_curve(chart.gens[k], chart.embedding);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s[k] * g[i];
  }
  return v;
}

inline std::vector<std::vector<Laurent>> gens_on_curve(const ZChart& chart) {
  std::vector<std::vector<Laurent>> g;
  for (const auto& d : chart.gens) g.push_back(on_curve(d, chart.embedding));
  return g;
}

inline bool divisible_by(const Poly& p, std::size_t var) {
  for (const auto& [e, c] : p.terms())
    if (e[var] < 1) return false;
  return true;
}

}  // namespace detail

/// Builds the time-extended setting and checks the scenario's consistency:
/// chart transitions invert each other, the morphism glues, the two chart
/// presentations describe the same sheaf, and sigma is a global section.
inline LiftSetting prepare_setting(const Scenario& sc) {
  const auto& tg = sc.target;
  const std::size_t m = tg.dim();
  if (m == 0) throw argument_error("target needs at least one variable");
  if (tg.charts != 1 && tg.charts != 2) throw argument_error("target must have one or two charts");

  LaurentMap x_to0 = identity_map(m), x_to1 = identity_map(m);
  if (tg.charts == 2) {
    if (tg.transition.size() != m || tg.inverse.size() != m) throw dimension_error("transition has wrong length");
    if (compose_maps(tg.transition, tg.inverse, m) != identity_map(m) ||
        compose_maps(tg.inverse, tg.transition, m) != identity_map(m))
      throw argument_error("chart transition and its inverse do not compose to the identity");
    if (!tg.jacobian.empty() && tg.jacobian != jacobian_of(tg.transition))
      throw argument_error("declared jacobian does not match the transition");
    x_to0 = tg.inverse;
    x_to1 = tg.transition;
  }

  LiftSetting st;
  st.curve = sc.curve;
  st.window = sc.window;
  st.order = sc.order;
  st.graph = sc.morphism.graph;
  const bool graph = sc.morphism.graph;
  const std::size_t off = graph ? 1 : 0;
  const std::size_t dimz = off + m + 1;
  const std::size_t tix = dimz - 1;

  // Chart changes on Z: (y, x, t) -> (1/y, phi(x), t).
  std::vector<std::size_t> xslots(m);
  for (std::size_t k = 0; k < m; ++k) xslots[k] = off + k;
  auto z_map = [&](const LaurentMap& xmap) {
    LaurentMap out;
    if (graph) {
      Exponents inv(dimz, 0);
      inv[0] = -1;
      out.push_back(Laurent::monomial(std::move(inv), Rational(1)));
    }
    for (const auto& c : xmap) out.push_back(remap_variables(c, dimz, xslots));
    out.push_back(Laurent::variable(dimz, tix));
    return out;
  };
  st.to_chart0 = z_map(x_to0);
  st.to_chart1 = z_map(x_to1);

  for (std::size_t a = 0; a < 2; ++a) {
    ZChart& ch = st.charts[a];
    const auto& f = sc.morphism.charts[a];
    if (f.size() != m) throw dimension_error("morphism has wrong number of components");
    for (const auto& fk : f)
      if (fk.num_vars() != 1) throw dimension_error("morphism components are functions of the chart parameter");
    if (graph) ch.names.push_back("y");
    for (const auto& v : tg.vars) ch.names.push_back(v);
    ch.names.push_back("t");

    if (graph) ch.embedding.push_back(Laurent::variable(1, 0));
    for (const auto& fk : f) ch.embedding.push_back(detail::param_poly(fk));
    ch.embedding.push_back(Laurent(1));

    if (graph) {
      ch.id_coord = 0;
      const auto emb = graph_embed(f, 1, sc.sheaf.gens[a]);
      for (const auto& g : emb.generators) {
        std::vector<std::size_t> slots(g.num_vars());
        for (std::size_t k = 0; k < slots.size(); ++k) slots[k] = k;
        VectorField e(dimz);
        for (std::size_t k = 0; k < g.num_vars(); ++k) e[k] = remap_variables(g[k], dimz, slots);
        ch.gens.push_back(std::move(e));
      }
    } else {
      std::optional<std::size_t> id;
      for (std::size_t k = 0; k < m && !id; ++k)
        if (f[k] == Poly::variable(1, 0)) id = off + k;
      if (!id)
        throw argument_error("chart " + std::to_string(a) +
                             " of the morphism does not identify the curve parameter with a coordinate; "
                             "mark the morphism 'graph'");
      ch.id_coord = *id;
      for (const auto& g : sc.sheaf.gens[a]) {
        if (g.num_vars() != m) throw dimension_error("generator has wrong number of variables");
        VectorField e(dimz);
        for (std::size_t k = 0; k < m; ++k) e[off + k] = remap_variables(g[k], dimz, xslots);
        ch.gens.push_back(std::move(e));
      }
    }
    if (ch.gens.empty()) throw argument_error("sheaf needs at least one generator per chart");
    for (const auto& g : ch.gens)
      for (const auto& c : g.components())
        if (!c.is_zero()) st.max_gen_degree = std::max(st.max_gen_degree, c.total_degree());
  }

  // f must glue: chart-1 representation, moved to chart-0 coordinates along w = 1/z.
  {
    std::vector<Laurent> e1;
    for (const auto& c : st.charts[1].embedding) e1.push_back(invert_parameter(c));
    std::vector<Laurent> moved;
    for (const auto& c : st.to_chart0) moved.push_back(on_curve(c, e1));
    if (moved != st.charts[0].embedding) throw argument_error("morphism charts do not agree on the overlap");
  }

  // Transition rule for generator coefficients, derived from the Jacobian.
  const Window wide = sc.window.widened(2 * st.max_gen_degree + 2);
  {
    const auto g0 = detail::gens_on_curve(st.charts[0]);
    st.rule.rule.assign(st.charts[0].gens.size(), std::vector<Laurent>(st.charts[1].gens.size(), Laurent(1)));
    for (std::size_t k = 0; k < st.charts[1].gens.size(); ++k) {
      const auto pushed = push_field(to_laurent(st.charts[1].gens[k]), st.to_chart0, st.to_chart1);
      auto col = express_in_generators(on_curve(pushed, st.charts[0].embedding), g0, wide);
      if (!col) throw argument_error("chart-1 generator is not a combination of chart-0 generators on the overlap");
      for (std::size_t j = 0; j < col->size(); ++j) st.rule.rule[j][k] = (*col)[j];
    }
  }

  // sigma is a global section of F_Y.
  std::array<Section, 2> sig;
  for (std::size_t a = 0; a < 2; ++a) {
    if (sc.sigma[a].size() != st.charts[a].gens.size())
      throw dimension_error("sigma has wrong number of generator coefficients");
    for (const auto& c : sc.sigma[a]) {
      if (c.num_vars() != 1) throw dimension_error("sigma coefficients are functions of the chart parameter");
      sig[a].push_back(to_laurent(c));
    }
  }
  if (restrict_section(0, sig[0], st.rule, wide) != restrict_section(1, sig[1], st.rule, wide))
    throw argument_error("sigma does not glue on the overlap");

  // Initial fields sigma + d/dt, plus perturbations moved into each chart.
  for (std::size_t a = 0; a < 2; ++a) {
    const ZChart& ch = st.charts[a];
    VectorField d = detail::extend_section(sig[a], ch);
    const auto& pert = sc.perturb[a];
    if (!pert.empty()) {
      if (pert.size() != m) throw dimension_error("perturbation has wrong number of components");
      std::vector<std::size_t> slots = xslots;
      slots.push_back(tix);
      std::vector<Laurent> comps(dimz, Laurent(dimz));
      for (std::size_t k = 0; k < m; ++k) {
        if (pert[k].num_vars() != m + 1) throw dimension_error("perturbation is a function of the X variables and t");
        comps[off + k] = to_laurent(remap_variables(pert[k], dimz, slots));
      }
      LaurentField e(std::move(comps));
      if (a == 1) e = push_field(e, st.to_chart1, st.to_chart0);
      VectorField ep(dimz);
      for (std::size_t k = 0; k < dimz; ++k) {
        if (e[k].has_negative_exponent())
          throw argument_error("perturbation has a pole on chart " + std::to_string(a));
        ep[k] = to_poly(e[k]);
        if (!detail::divisible_by(ep[k], tix)) throw argument_error("perturbation must vanish at t = 0");
      }
      d += ep;
    }
    st.initial_fields[a] = extend_constant_flow(d);
  }
  return st;
}

// ---------------------------------------------------------------------------
// Jet sections along Y.

/// coords[i][k]: i-th derivative coordinate of Z-coordinate k, as a Laurent
/// polynomial in the chart parameter.
struct JetSection {
  std::vector<std::vector<Laurent>> coords;
  std::size_t order() const { return coords.size() - 1; }
  JetSection project(std::size_t n) const {
    if (n > order()) throw argument_error("cannot project a jet section to a higher order");
    return {std::vector<std::vector<Laurent>>(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(n) + 1)};
  }
  friend bool operator==(const JetSection&, const JetSection&) = default;
};

/// tau^n_D along Y: coordinate i of Z-coordinate k is (D^i x_k) o g.
inline JetSection local_jet_section(const TimeField& d, const std::vector<Laurent>& embedding, unsigned n) {
  if (time_component_class(d) != TimeClass::ConstantFlow)
    throw classification_error("local jet sections need a field with constant flow in time");
  const std::size_t dim = d.base.num_vars();
  if (embedding.size() != dim) throw dimension_error("embedding has wrong number of components");
  JetSection s;
  s.coords.assign(n + 1, std::vector<Laurent>(dim, Laurent(1)));
  for (std::size_t k = 0; k < dim; ++k) {
    Poly g = Poly::variable(dim, k);
    for (unsigned i = 0; i <= n; ++i) {
      if (i) g = apply_derivation(d.base, g);
      s.coords[i][k] = on_curve(g, embedding);
    }
  }
  return s;
}

/// A chart-1 jet section rewritten in chart-0 coordinates on the overlap:
/// w -> 1/z, then the chart change applied to the arcs mod u^{n+1}.
inline JetSection to_chart0_section(const JetSection& s1, const LiftSetting& st) {
  const std::size_t n = s1.order(), dim = s1.coords[0].size();
  std::vector<series<Laurent>> arcs;
  for (std::size_t k = 0; k < dim; ++k) {
    series<Laurent> a(n, Laurent(1));
    for (std::size_t i = 0; i <= n; ++i)
      a[i] = invert_parameter(s1.coords[i][k]) * factorial(static_cast<unsigned>(i)).inverse();
    arcs.push_back(std::move(a));
  }
  const auto one = series<Laurent>::constant(n, Laurent::constant(1, Rational(1)));
  JetSection out;
  out.coords.assign(n + 1, std::vector<Laurent>(dim, Laurent(1)));
  for (std::size_t k = 0; k < dim; ++k) {
    const auto moved = evaluate(st.to_chart0[k], arcs, one);
    for (std::size_t i = 0; i <= n; ++i) out.coords[i][k] = moved[i] * factorial(static_cast<unsigned>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Defects, corrections, lifting.

/// Which bracket the cross-check matched. Bracket10: the defect
/// tau_0 - tau_1 equals [D_1, D_0]^{(n+1)} on Y. Bracket01: it equals
/// [D_0, D_1]^{(n+1)}. Both: the two brackets agree with it (e.g. all zero).
enum class BracketOrientation { Both, Bracket10, Bracket01, Neither };

inline const char* to_string(BracketOrientation o) {
  switch (o) {
    case BracketOrientation::Both: return "both";
    case BracketOrientation::Bracket10: return "tau0 - tau1 = [D1,D0]^(n+1)";
    case BracketOrientation::Bracket01: return "tau0 - tau1 = [D0,D1]^(n+1)";
    case BracketOrientation::Neither: return "neither";
  }
  return "?";
}

struct DefectResult {
  Cochain1 nu;
  std::vector<Laurent> difference;  // tau_0 - tau_1 at order n+1, chart-0 Z-coordinates along Y
  BracketOrientation orientation = BracketOrientation::Neither;
};

/// Affine difference of two candidate (n+1)-liftings on the overlap, in
/// chart-0 generator coefficients. Requires agreement to order n.
inline DefectResult defect_cochain(const LiftSetting& st, const std::array<TimeField, 2>& fields,
                                   const std::array<JetSection, 2>& candidates, const Window& w) {
  const JetSection& t0 = candidates[0];
  const JetSection t1 = to_chart0_section(candidates[1], st);
  const std::size_t top = t0.order();
  if (t1.order() != top) throw dimension_error("candidate liftings have different orders");
  if (top < 2) throw argument_error("defects are defined from order 2 on");
  for (std::size_t i = 0; i < top; ++i)
    if (t0.coords[i] != t1.coords[i])
      throw precondition_error("candidate liftings differ on the overlap at order " + std::to_string(i),
                               static_cast<std::ptrdiff_t>(i));

  DefectResult out;
  const ZChart& c0 = st.charts[0];
  for (std::size_t k = 0; k < c0.dim(); ++k) out.difference.push_back(t0.coords[top][k] - t1.coords[top][k]);
  if (!out.difference[c0.time_index()].is_zero())
    throw std::logic_error("defect has a time component; the local fields are not constant flows");
  if (st.graph && !out.difference[0].is_zero())
    throw std::logic_error("defect moves the graph coordinate");

  auto coeffs = express_in_generators(out.difference, detail::gens_on_curve(c0), w);
  if (!coeffs) throw std::logic_error("defect is not a section of F_Y within the window");
  require_fits(*coeffs, w, "defect cochain");
  out.nu = {*coeffs, negate(*coeffs), w};

  // Cross-check against the iterated-bracket expression.
  const LaurentField d0 = to_laurent(fields[0].base);
  const LaurentField d1 = push_field(to_laurent(fields[1].base), st.to_chart0, st.to_chart1);
  const auto b10 = on_curve(iterated_bracket(d1, d0, static_cast<unsigned>(top)), c0.embedding);
  const auto b01 = on_curve(iterated_bracket(d0, d1, static_cast<unsigned>(top)), c0.embedding);
  const bool m10 = b10 == out.difference, m01 = b01 == out.difference;
  out.orientation = m10 && m01 ? BracketOrientation::Both
                    : m10      ? BracketOrientation::Bracket10
                    : m01      ? BracketOrientation::Bracket01
                               : BracketOrientation::Neither;
  return out;
}

/// eta_n together with the local fields inducing it.
struct LiftState {
  unsigned order = 1;
  std::array<TimeField, 2> fields;
  std::array<JetSection, 2> sections;
};

struct StepRecord {
  unsigned from_order = 0;
  Window window;
  Cochain1 nu;
  BracketOrientation orientation = BracketOrientation::Neither;
  Cochain0 lambda;
  std::array<VectorField, 2> corrections;  // (t^n / n!) E_a, subtracted from D_a
  bool corrected_defect_zero = false;
};

class lift_obstructed : public std::runtime_error {
 public:
  lift_obstructed(unsigned order, Obstruction ob, Cochain1 nu)
      : std::runtime_error("lifting from order " + std::to_string(order) + " is obstructed (cokernel dimension " +
                           std::to_string(ob.cokernel_dim) + ")"),
        order_(order),
        ob_(std::move(ob)),
        nu_(std::move(nu)) {}
  unsigned order() const noexcept { return order_; }
  const Obstruction& obstruction() const noexcept { return ob_; }
  const Cochain1& cochain() const noexcept { return nu_; }

 private:
  unsigned order_;
  Obstruction ob_;
  Cochain1 nu_;
};

inline std::array<JetSection, 2> sections_of(const LiftSetting& st, const std::array<TimeField, 2>& fields,
                                             unsigned n) {
  return {local_jet_section(fields[0], st.charts[0].embedding, n),
          local_jet_section(fields[1], st.charts[1].embedding, n)};
}

/// Every invariant of a lifting state: sections are induced by the recorded
/// fields, the fields have constant flow in time, and the chart sections
/// agree on the overlap.
inline bool state_consistent(const LiftSetting& st, const LiftState& s) {
  for (std::size_t a = 0; a < 2; ++a) {
    if (time_component_class(s.fields[a]) != TimeClass::ConstantFlow) return false;
    if (local_jet_section(s.fields[a], st.charts[a].embedding, s.order) != s.sections[a]) return false;
  }
  return to_chart0_section(s.sections[1], st) == s.sections[0];
}

inline LiftState initial_state(const LiftSetting& st) {
  LiftState s;
  s.order = 1;
  s.fields = st.initial_fields;
  s.sections = sections_of(st, s.fields, 1);
  if (to_chart0_section(s.sections[1], st) != s.sections[0])
    throw std::logic_error("first-order sections do not glue");
  return s;
}

inline Window step_window(const LiftSetting& st, unsigned n) {
  return st.window.widened(static_cast<int>(n) * st.max_gen_degree);
}

/// One lifting step n -> n+1: local candidates, their defect cochain, its
/// splitting lambda, and the corrected fields D_a - (t^n/n!) E_a.
inline std::pair<LiftState, StepRecord> lift_step(const LiftSetting& st, const LiftState& s) {
  const unsigned n = s.order;
  StepRecord rec;
  rec.from_order = n;
  rec.window = step_window(st, n);

  const auto cand = sections_of(st, s.fields, n + 1);
  const auto defect = defect_cochain(st, s.fields, cand, rec.window);
  rec.nu = defect.nu;
  rec.orientation = defect.orientation;

  auto sol = solve_coboundary(rec.nu, st.rule);
  if (auto* ob = std::get_if<Obstruction>(&sol)) throw lift_obstructed(n, *ob, rec.nu);
  rec.lambda = std::get<Cochain0>(sol);

  LiftState next;
  next.order = n + 1;
  const Rational scale = factorial(n).inverse();
  for (std::size_t a = 0; a < 2; ++a) {
    const ZChart& ch = st.charts[a];
    const VectorField e = detail::extend_section(rec.lambda.lambda[a], ch);
    Exponents tn(ch.dim(), 0);
    tn[ch.time_index()] = static_cast<int>(n);
    rec.corrections[a] = Poly::monomial(tn, scale) * e;
    VectorField d = s.fields[a].base - rec.corrections[a];
    next.fields[a] = TimeField{std::move(d)};
    if (time_component_class(next.fields[a]) != TimeClass::ConstantFlow)
      throw std::logic_error("correction changed the time component");
  }
  next.sections = sections_of(st, next.fields, n + 1);

  for (std::size_t a = 0; a < 2; ++a) {
    if (next.sections[a].project(n) != s.sections[a]) throw std::logic_error("corrected lifting does not project to eta_n");
    // tau_a - lambda_a
    auto expected = cand[a].coords[n + 1];
    const auto lam = detail::section_vector(rec.lambda.lambda[a], st.charts[a]);
    for (std::size_t k = 0; k < expected.size(); ++k) expected[k] -= lam[k];
    if (next.sections[a].coords[n + 1] != expected)
      throw std::logic_error("corrected field does not induce tau - lambda");
  }
  const auto after = to_chart0_section(next.sections[1], st);
  rec.corrected_defect_zero = after == next.sections[0];
  if (!rec.corrected_defect_zero) throw std::logic_error("corrected liftings do not glue");
  return {next, rec};
}

struct LiftTranscript {
  LiftSetting setting;
  LiftState initial;
  std::vector<StepRecord> steps;
  std::vector<LiftState> states;  // eta_1, ..., eta_N
  const LiftState& final_state() const { return states.back(); }
};

/// eta_1 = sigma + d/dt lifted step by step to order N.
inline LiftTranscript lift_to_order(const Scenario& sc, unsigned order) {
  if (order < 1) throw argument_error("lifting order must be at least 1");
  LiftTranscript tr;
  tr.setting = prepare_setting(sc);
  tr.initial = initial_state(tr.setting);
  tr.states.push_back(tr.initial);
  while (tr.states.back().order < order) {
    auto [next, rec] = lift_step(tr.setting, tr.states.back());
    tr.steps.push_back(std::move(rec));
    tr.states.push_back(std::move(next));
  }
  for (std::size_t i = 1; i < tr.states.size(); ++i)
    for (std::size_t a = 0; a < 2; ++a)
      if (tr.states[i].sections[a].project(tr.states[i - 1].order) != tr.states[i - 1].sections[a])
        throw std::logic_error("tower property violated");
  return tr;
}

// ---------------------------------------------------------------------------
// Text rendering.

/// Coordinate k of a jet section across all orders: `(z,z,z)`.
inline std::string coordinate_string(const JetSection& s, std::size_t k, const std::string& param) {
  std::string out = "(";
  for (std::size_t i = 0; i <= s.order(); ++i) {
    if (i) out += ",";
    out += to_string(s.coords[i][k], {param});
  }
  return out + ")";
}

inline void write_state(std::ostream& os, const LiftSetting& st, const LiftState& s, bool with_fields) {
  for (std::size_t a = 0; a < 2; ++a) {
    const ZChart& ch = st.charts[a];
    if (with_fields) os << "  chart" << a << " field: " << to_string(s.fields[a].base, ch.names) << "\n";
    for (std::size_t k = 0; k < ch.dim(); ++k)
      os << "  chart" << a << " " << ch.names[k] << ": " << coordinate_string(s.sections[a], k, st.curve.param(a))
         << "\n";
  }
}

inline std::string render_transcript(const LiftTranscript& tr) {
  std::ostringstream os;
  const LiftSetting& st = tr.setting;
  const std::string& z = st.curve.param(0);
  os << "transition rule:";
  for (const auto& row : st.rule.rule) os << " " << to_string(row, z);
  os << "\n";
  os << "order 1\n";
  write_state(os, st, tr.initial, true);
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const StepRecord& r = tr.steps[i];
    os << "step " << r.from_order << " -> " << r.from_order + 1 << "\n";
    os << "  window: [" << r.window.lo << ", " << r.window.hi << "]\n";
    os << "  nu01: " << to_string(r.nu.nu01, z) << "\n";
    os << "  nu10: " << to_string(r.nu.nu10, z) << "\n";
    os << "  bracket check: " << to_string(r.orientation) << "\n";
    os << "  lambda0: " << to_string(r.lambda.lambda[0], st.curve.param(0)) << "\n";
    os << "  lambda1: " << to_string(r.lambda.lambda[1], st.curve.param(1)) << "\n";
    for (std::size_t a = 0; a < 2; ++a)
      os << "  correction chart" << a << ": " << to_string(r.corrections[a], st.charts[a].names) << "\n";
    os << "  corrected defect: " << (r.corrected_defect_zero ? "0" : "nonzero") << "\n";
    write_state(os, st, tr.states[i + 1], true);
  }
  os << "result order " << tr.final_state().order << "\n";
  write_state(os, st, tr.final_state(), false);
  return os.str();
}

}  // namespace jetlift
