#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cech.hpp"
#include "errors.hpp"
#include "frobenius.hpp"
#include "jet.hpp"
#include "lifting.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "vector_field.hpp"

namespace jetlift {

/// Where a piece of text sits in its source, for error messages.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;  // column of the first character of the text
};

namespace detail {

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

/// A slice of a line together with its absolute position.
struct Piece {
  std::string_view text;
  SourcePos pos;
};

inline Piece trimmed(const Piece& p) {
  std::size_t lead = 0;
  auto t = trim(p.text, &lead);
  return {t, {p.pos.line, p.pos.column + lead}};
}

/// Splits on `sep` outside parentheses; pieces are trimmed.
inline std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    const char c = i < p.text.size() ? p.text[i] : sep;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == sep && depth == 0) || i == p.text.size()) {
      out.push_back(trimmed({p.text.substr(start, i - start), {p.pos.line, p.pos.column + start}}));
      start = i + 1;
    }
  }
  return out;
}

class PolyParser {
 public:
  PolyParser(Piece src, const std::vector<std::string>& names, bool allow_laurent)
      : s_(src.text), pos_(src.pos), names_(names), laurent_(allow_laurent) {}

  Laurent parse() {
    skip();
    if (at_end()) fail("expected a polynomial");
    Laurent r = expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + s_[i_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw parse_error(what, pos_.line, pos_.column + at);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, i_); }

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::size_t n() const { return names_.size(); }

  Laurent expr() {
    Laurent r(n());
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
        skip();
      } else if (!first) {
        return r;
      }
      Laurent t = term();
      r += sign < 0 ? -t : t;
      first = false;
      skip();
      if (peek() != '+' && peek() != '-') return r;
    }
  }

  bool starts_factor() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           c == '(';
  }

  Laurent term() {
    Laurent r = factor();
    while (true) {
      skip();
      if (peek() == '*') {
        ++i_;
        skip();
        r = r * factor();
      } else if (peek() == '/') {
        const std::size_t at = i_;
        ++i_;
        skip();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          const Rational d = integer();
          if (d.is_zero()) fail("division by zero", at);
          r = r * Laurent::constant(n(), d.inverse());
        } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
          if (!laurent_) fail("division by a variable needs Laurent polynomials", at);
          const std::size_t v = variable();
          int e = 1;
          skip();
          if (peek() == '^') {
            ++i_;
            skip();
            e = exponent(false);
          }
          Exponents ex(n(), 0);
          ex[v] = -e;
          r = r * Laurent::monomial(std::move(ex), Rational(1));
        } else {
          fail("expected a number or variable after '/'");
        }
      } else if (starts_factor()) {
        r = r * factor();
      } else {
        return r;
      }
    }
  }

  Laurent factor() {
    skip();
    const char c = peek();
    Laurent base(n());
    if (std::isdigit(static_cast<unsigned char>(c))) {
      base = Laurent::constant(n(), integer());
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      base = Laurent::variable(n(), variable());
    } else if (c == '(') {
      ++i_;
      base = expr();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++i_;
    } else if (at_end()) {
      fail("unexpected end of input");
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
    skip();
    if (peek() == '^') {
      ++i_;
      skip();
      const bool is_var = base.is_monomial() && base.total_degree() == 1;
      const int e = exponent(laurent_ && is_var);
      if (e < 0) return ring_traits<Laurent>::inverse(ring_pow(base, -e));
      return ring_pow(base, e);
    }
    return base;
  }

  Rational integer() {
    const std::size_t a = i_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    return Rational::parse(s_.substr(a, i_ - a));
  }

  std::size_t variable() {
    const std::size_t a = i_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++i_;
    const std::string_view name = s_.substr(a, i_ - a);
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == name) return k;
    fail("unknown variable '" + std::string(name) + "'", a);
  }

  int exponent(bool allow_negative) {
    const std::size_t a = i_;
    int sign = 1;
    if (peek() == '-') {
      if (!allow_negative) fail("negative exponent not allowed here", a);
      sign = -1;
      ++i_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer exponent");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 100000) fail("exponent too large", a);
      ++i_;
    }
    return sign * static_cast<int>(v);
  }

  std::string_view s_;
  SourcePos pos_;
  const std::vector<std::string>& names_;
  bool laurent_;
  std::size_t i_ = 0;
};

inline Laurent parse_laurent_piece(const Piece& p, const std::vector<std::string>& names) {
  return PolyParser(p, names, true).parse();
}
inline Poly parse_poly_piece(const Piece& p, const std::vector<std::string>& names) {
  const Laurent l = PolyParser(p, names, false).parse();
  if (l.has_negative_exponent()) throw parse_error("expression has a pole", p.pos.line, p.pos.column);
  return to_poly(l);
}

inline Rational parse_rational_piece(const Piece& p) {
  const Piece t = trimmed(p);
  try {
    if (t.text.empty()) throw std::invalid_argument("empty");
    for (char c : t.text)
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
        throw std::invalid_argument("bad");
    return Rational::parse(t.text.front() == '+' ? t.text.substr(1) : t.text);
  } catch (const std::invalid_argument&) {
    throw parse_error("expected a rational number, got '" + std::string(t.text) + "'", t.pos.line, t.pos.column);
  }
}

inline int parse_int_piece(const Piece& p) {
  const Rational r = parse_rational_piece(p);
  if (!r.is_integer() || !r.raw().get_num().fits_sint_p())
    throw parse_error("expected an integer", p.pos.line, p.pos.column);
  return static_cast<int>(r.raw().get_num().get_si());
}

inline Piece whole(std::string_view text) { return trimmed({text, {1, 1}}); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-line parsers.

inline std::vector<std::string> parse_names(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& p : detail::split(detail::whole(text), ',')) {
    if (p.text.empty()) throw parse_error("empty variable name", p.pos.line, p.pos.column);
    for (char c : p.text)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_') || std::isdigit(static_cast<unsigned char>(p.text[0])))
        throw parse_error("bad variable name '" + std::string(p.text) + "'", p.pos.line, p.pos.column);
    for (const auto& q : out)
      if (q == p.text) throw parse_error("duplicate variable '" + q + "'", p.pos.line, p.pos.column);
    out.emplace_back(p.text);
  }
  return out;
}

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& names) {
  return detail::parse_poly_piece(detail::whole(text), names);
}

inline Laurent parse_laurent(std::string_view text, const std::vector<std::string>& names) {
  return detail::parse_laurent_piece(detail::whole(text), names);
}

/// Components separated by commas: `y, -x`.
inline VectorField parse_field(std::string_view text, const std::vector<std::string>& names) {
  std::vector<Poly> comps;
  const auto parts = detail::split(detail::whole(text), ',');
  if (parts.size() != names.size())
    throw parse_error("field needs " + std::to_string(names.size()) + " components, got " +
                          std::to_string(parts.size()),
                      1, 1);
  for (const auto& p : parts) comps.push_back(detail::parse_poly_piece(p, names));
  return VectorField(std::move(comps));
}

/// Fields separated by semicolons: `1, 0; 0, x`.
inline std::vector<VectorField> parse_fields(std::string_view text, const std::vector<std::string>& names) {
  std::vector<VectorField> out;
  for (const auto& p : detail::split(detail::whole(text), ';')) out.push_back(parse_field(p.text, names));
  return out;
}

inline Point parse_point(std::string_view text, std::size_t dim) {
  Point out;
  auto body = detail::whole(text);
  if (body.text.size() >= 2 && body.text.front() == '(' && body.text.back() == ')')
    body = detail::trimmed({body.text.substr(1, body.text.size() - 2), {1, body.pos.column + 1}});
  for (const auto& p : detail::split(body, ',')) out.push_back(detail::parse_rational_piece(p));
  if (out.size() != dim)
    throw parse_error("point needs " + std::to_string(dim) + " coordinates, got " + std::to_string(out.size()), 1, 1);
  return out;
}

/// `x=-1:1:1/2, y=0:2:1`, one axis per variable in order.
inline std::vector<GridAxis> parse_grid(std::string_view text, const std::vector<std::string>& names) {
  std::vector<GridAxis> out;
  const auto parts = detail::split(detail::whole(text), ',');
  if (parts.size() != names.size())
    throw parse_error("grid needs one axis per variable", 1, 1);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    const auto eq = p.text.find('=');
    if (eq == std::string_view::npos) throw parse_error("expected 'var=start:stop:step'", p.pos.line, p.pos.column);
    const auto name = detail::trim(p.text.substr(0, eq));
    if (name != names[k])
      throw parse_error("axis " + std::to_string(k) + " must be '" + names[k] + "'", p.pos.line, p.pos.column);
    const auto range = detail::split({p.text.substr(eq + 1), {p.pos.line, p.pos.column + eq + 1}}, ':');
    if (range.size() != 3) throw parse_error("expected start:stop:step", p.pos.line, p.pos.column + eq + 1);
    out.push_back({detail::parse_rational_piece(range[0]), detail::parse_rational_piece(range[1]),
                   detail::parse_rational_piece(range[2])});
  }
  return out;
}

/// `lo:hi`, `lo hi` or `[lo, hi]`.
inline Window parse_window(std::string_view text) {
  auto body = detail::whole(text);
  if (body.text.size() >= 2 && body.text.front() == '[' && body.text.back() == ']')
    body = detail::trimmed({body.text.substr(1, body.text.size() - 2), {1, body.pos.column + 1}});
  std::string norm(body.text);
  for (char& c : norm)
    if (c == ':' || c == ',') c = ' ';
  std::vector<detail::Piece> parts;
  std::size_t i = 0;
  while (i < norm.size()) {
    while (i < norm.size() && norm[i] == ' ') ++i;
    std::size_t j = i;
    while (j < norm.size() && norm[j] != ' ') ++j;
    if (j > i) parts.push_back({body.text.substr(i, j - i), {body.pos.line, body.pos.column + i}});
    i = j;
  }
  if (parts.size() != 2) throw parse_error("window needs two bounds", body.pos.line, body.pos.column);
  Window w{detail::parse_int_piece(parts[0]), detail::parse_int_piece(parts[1])};
  if (w.lo > w.hi) throw parse_error("window lower bound exceeds upper bound", body.pos.line, body.pos.column);
  return w;
}

// ---------------------------------------------------------------------------
// Scenario files.

namespace detail {

struct ScenarioReader {
  Scenario sc;
  bool have_y = false, have_x = false, have_f = false, have_sheaf = false, have_sigma = false;
  std::optional<std::vector<Piece>> transition, inverse, jacobian;

  static std::size_t chart_index(const Piece& p, const std::string& label) {
    if (label == "chart0") return 0;
    if (label == "chart1") return 1;
    throw parse_error("expected chart0 or chart1, got '" + label + "'", p.pos.line, p.pos.column);
  }

  /// `chartK: rest` -> (K, rest)
  static std::pair<std::size_t, Piece> chart_item(const Piece& p) {
    const auto colon = p.text.find(':');
    if (colon == std::string_view::npos) throw parse_error("expected 'chartK: ...'", p.pos.line, p.pos.column);
    const std::string label(trim(p.text.substr(0, colon)));
    return {chart_index(p, label), trimmed({p.text.substr(colon + 1), {p.pos.line, p.pos.column + colon + 1}})};
  }

  static std::pair<std::string, Piece> keyword(const Piece& p) {
    std::size_t i = 0;
    while (i < p.text.size() && !std::isspace(static_cast<unsigned char>(p.text[i]))) ++i;
    return {std::string(p.text.substr(0, i)), trimmed({p.text.substr(i), {p.pos.line, p.pos.column + i}})};
  }

  std::vector<std::string> xvars() const {
    if (!have_x) throw parse_error("[x] must come before this section", 1, 1);
    return sc.target.vars;
  }

  void y_item(const Piece& p) {
    auto [kw, rest] = keyword(p);
    if (kw == "charts") {
      auto [a, b] = keyword(rest);
      auto [c, tail] = keyword(b);
      if (a.empty() || c.empty() || !tail.text.empty())
        throw parse_error("expected 'charts <z> <w>'", p.pos.line, p.pos.column);
      sc.curve.params = {a, c};
      have_y = true;
    } else if (kw == "transition") {
      std::string want = sc.curve.params[1] + "=1/" + sc.curve.params[0];
      std::string got;
      for (char ch : rest.text)
        if (!std::isspace(static_cast<unsigned char>(ch))) got += ch;
      if (got != want)
        throw parse_error("the curve transition must be '" + sc.curve.params[1] + " = 1/" + sc.curve.params[0] + "'",
                          rest.pos.line, rest.pos.column);
    } else {
      throw parse_error("unknown [y] item '" + kw + "'", p.pos.line, p.pos.column);
    }
  }

  void x_item(const Piece& p) {
    auto [kw, rest] = keyword(p);
    if (kw == "vars") {
      sc.target.vars = parse_names(rest.text);
      have_x = true;
    } else if (kw == "charts") {
      const int c = parse_int_piece(rest);
      if (c != 1 && c != 2) throw parse_error("target charts must be 1 or 2", rest.pos.line, rest.pos.column);
      sc.target.charts = static_cast<std::size_t>(c);
    } else if (kw == "transition" || kw == "inverse") {
      const auto arrow = rest.text.find("->");
      if (arrow == std::string_view::npos) throw parse_error("expected 'vars -> images'", rest.pos.line, rest.pos.column);
      const auto lhs = split({rest.text.substr(0, arrow), rest.pos}, ',');
      const auto rhs = split({rest.text.substr(arrow + 2), {rest.pos.line, rest.pos.column + arrow + 2}}, ',');
      if (lhs.size() != rhs.size()) throw parse_error("transition arity mismatch", rest.pos.line, rest.pos.column);
      (kw == "transition" ? transition : inverse) = rhs;
    } else if (kw == "jacobian") {
      jacobian = split(rest, ',');
    } else {
      throw parse_error("unknown [x] item '" + kw + "'", p.pos.line, p.pos.column);
    }
  }

  void f_item(const Piece& p) {
    if (p.text == "graph") {
      sc.morphism.graph = true;
      return;
    }
    const auto vars = xvars();
    auto [chart, rest] = chart_item(p);
    std::vector<Poly> comps(vars.size(), Poly(1));
    std::vector<bool> seen(vars.size(), false);
    for (const auto& a : split(rest, ',')) {
      const auto eq = a.text.find('=');
      if (eq == std::string_view::npos) throw parse_error("expected 'var = expression'", a.pos.line, a.pos.column);
      const std::string name(trim(a.text.substr(0, eq)));
      std::size_t k = 0;
      while (k < vars.size() && vars[k] != name) ++k;
      if (k == vars.size()) throw parse_error("unknown target variable '" + name + "'", a.pos.line, a.pos.column);
      comps[k] = parse_poly_piece(trimmed({a.text.substr(eq + 1), {a.pos.line, a.pos.column + eq + 1}}),
                                  {sc.curve.param(chart)});
      seen[k] = true;
    }
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (!seen[k]) throw parse_error("missing component '" + vars[k] + "'", p.pos.line, p.pos.column);
    sc.morphism.charts[chart] = comps;
    have_f = true;
  }

  void sheaf_item(const Piece& p) {
    auto [kw, rest] = keyword(p);
    if (kw != "gen") throw parse_error("expected 'gen chartK: ...'", p.pos.line, p.pos.column);
    const auto vars = xvars();
    auto [chart, body] = chart_item(rest);
    const auto parts = split(body, ',');
    if (parts.size() != vars.size())
      throw parse_error("generator needs " + std::to_string(vars.size()) + " components", body.pos.line, body.pos.column);
    std::vector<Poly> comps;
    for (const auto& c : parts) comps.push_back(parse_poly_piece(c, vars));
    sc.sheaf.gens[chart].emplace_back(std::move(comps));
    have_sheaf = true;
  }

  void sigma_item(const Piece& p) {
    auto [chart, body] = chart_item(p);
    std::vector<Poly> coeffs;
    for (const auto& c : split(body, ',')) coeffs.push_back(parse_poly_piece(c, {sc.curve.param(chart)}));
    sc.sigma[chart] = coeffs;
    have_sigma = true;
  }

  void perturb_item(const Piece& p) {
    auto vars = xvars();
    vars.push_back("t");
    auto [chart, body] = chart_item(p);
    const auto parts = split(body, ',');
    if (parts.size() != vars.size() - 1)
      throw parse_error("perturbation needs one component per target variable", body.pos.line, body.pos.column);
    std::vector<Poly> comps;
    for (const auto& c : parts) comps.push_back(parse_poly_piece(c, vars));
    sc.perturb[chart] = comps;
  }

  void item(const std::string& section, const Piece& p) {
    if (p.text.empty()) return;
    if (section == "y") y_item(p);
    else if (section == "x") x_item(p);
    else if (section == "f") f_item(p);
    else if (section == "sheaf") sheaf_item(p);
    else if (section == "sigma") sigma_item(p);
    else if (section == "perturb") perturb_item(p);
    else if (section == "window") sc.window = parse_window(p.text);
    else if (section == "order") {
      const int n = parse_int_piece(p);
      if (n < 1) throw parse_error("order must be at least 1", p.pos.line, p.pos.column);
      sc.order = static_cast<unsigned>(n);
    } else throw parse_error("item outside a section", p.pos.line, p.pos.column);
  }

  void finish() {
    if (!have_x) throw parse_error("missing [x] section", 1, 1);
    if (!have_f) throw parse_error("missing [f] section", 1, 1);
    if (!have_sheaf) throw parse_error("missing [sheaf] section", 1, 1);
    if (!have_sigma) throw parse_error("missing [sigma] section", 1, 1);
    const auto& vars = sc.target.vars;
    auto maps = [&](const std::vector<Piece>& ps) {
      std::vector<Laurent> out;
      for (const auto& p : ps) out.push_back(parse_laurent_piece(p, vars));
      if (out.size() != vars.size()) throw parse_error("transition arity mismatch", ps.front().pos.line, ps.front().pos.column);
      return out;
    };
    if (sc.target.charts == 2) {
      if (!transition) throw parse_error("two-chart target needs a transition", 1, 1);
      sc.target.transition = maps(*transition);
      sc.target.inverse = inverse ? maps(*inverse) : sc.target.transition;
      if (jacobian) {
        if (jacobian->size() != vars.size() * vars.size())
          throw parse_error("jacobian needs m*m entries, row-major", jacobian->front().pos.line,
                            jacobian->front().pos.column);
        sc.target.jacobian.assign(vars.size(), {});
        for (std::size_t i = 0; i < jacobian->size(); ++i)
          sc.target.jacobian[i / vars.size()].push_back(parse_laurent_piece((*jacobian)[i], vars));
      }
    }
  }
};

}  // namespace detail

/// Line-oriented scenario text. Items after a `[section]` header (on the
/// same line or on following lines) are separated by ';'. `#` starts a
/// comment.
inline Scenario parse_scenario(std::string_view text) {
  detail::ScenarioReader rd;
  std::string section;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    detail::Piece p = detail::trimmed({line, {line_no, 1}});
    if (!p.text.empty() && p.text.front() == '[') {
      const auto close = p.text.find(']');
      if (close == std::string_view::npos) throw parse_error("unterminated section header", p.pos.line, p.pos.column);
      section = std::string(p.text.substr(1, close - 1));
      static const char* known[] = {"y", "x", "f", "sheaf", "sigma", "perturb", "window", "order"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw parse_error("unknown section [" + section + "]", p.pos.line, p.pos.column);
      p = detail::trimmed({p.text.substr(close + 1), {p.pos.line, p.pos.column + close + 1}});
    }
    if (!p.text.empty()) {
      if (section.empty()) throw parse_error("item outside a section", p.pos.line, p.pos.column);
      for (const auto& item : detail::split(p, ';')) rd.item(section, item);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  rd.finish();
  return rd.sc;
}

}  // namespace jetlift
