#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cech.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "frobenius.hpp"
#include "lifting.hpp"
#include "parse.hpp"
#include "vector_field.hpp"

namespace jetlift {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int refuted = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

/// Thrown by a subcommand when the computation succeeded but the claim it
/// checks does not hold. The message goes to stderr.
class refutation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw argument_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string relation_string(const BracketRelation& r, const std::vector<std::string>& names) {
  std::string s = "[D" + std::to_string(r.i + 1) + ",D" + std::to_string(r.j + 1) + "] =";
  bool any = false;
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
    if (r.coeffs[k].is_zero()) continue;
    s += (any ? " + (" : " (") + to_string(r.coeffs[k], names) + ")*D" + std::to_string(k + 1);
    any = true;
  }
  if (!any) s += " 0";
  return s;
}

/// Rows separated by ';', entries by ','.
inline SheafTransition parse_rule(const std::string& text, const std::vector<std::string>& param) {
  SheafTransition t;
  for (const auto& row : split(whole(text), ';')) {
    std::vector<Laurent> r;
    for (const auto& e : split(row, ',')) r.push_back(parse_laurent_piece(e, param));
    if (!t.rule.empty() && r.size() != t.rule[0].size()) throw parse_error("transition rows differ in length", 1, 1);
    t.rule.push_back(std::move(r));
  }
  return t;
}

}  // namespace detail

/// Parses `args` (without the program name), runs the subcommand and writes
/// its result to `out`. Returns 0 on success, 1 on refutation, 2 on usage or
/// parse errors.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact jets, flows, involutivity and deformation lifting", "jetlift"};
  app.require_subcommand(1);

  std::string vars_s, f1_s, f2_s, field_s, point_s, gens_s, grid_s, combo_s, rule_s, nu_s, window_s, scenario_s;
  unsigned n = 1, order = 1, degree = 2, inv_order = 10;
  std::optional<unsigned> lift_order;
  int radius = 2;
  bool expect_unobstructed = false;
  std::function<void()> action;

  auto vars = [&] { return parse_names(vars_s); };
  auto add_vars = [&](CLI::App* s) { s->add_option("--vars", vars_s, "comma-separated variable names")->required(); };

  {
    auto* s = app.add_subcommand("bracket", "Lie bracket [D1,D2]");
    add_vars(s);
    s->add_option("--f1", f1_s, "first field")->required();
    s->add_option("--f2", f2_s, "second field")->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        out << to_string(lie_bracket(parse_field(f1_s, v), parse_field(f2_s, v)), v) << "\n";
      };
    });
  }
  {
    auto* s = app.add_subcommand("iterbracket", "iterated bracket [D1,D2]^(n)");
    add_vars(s);
    s->add_option("--f1", f1_s)->required();
    s->add_option("--f2", f2_s)->required();
    s->add_option("--n", n, "order, at least 2")->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        out << to_string(iterated_bracket(parse_field(f1_s, v), parse_field(f2_s, v), n), v) << "\n";
      };
    });
  }
  {
    auto* s = app.add_subcommand("flowjet", "n-jet of the integral curve through a point");
    add_vars(s);
    s->add_option("--field", field_s)->required();
    s->add_option("--point", point_s)->required();
    s->add_option("--order", order)->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        out << to_string(flow_jet(parse_field(field_s, v), parse_point(point_s, v.size()), order)) << "\n";
      };
    });
  }
  {
    auto* s = app.add_subcommand("defect", "tau_{D2}^{n+1} - tau_{D1}^{n+1} at a point");
    add_vars(s);
    s->add_option("--f1", f1_s)->required();
    s->add_option("--f2", f2_s)->required();
    s->add_option("--point", point_s)->required();
    s->add_option("--n", n)->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        try {
          out << to_string(jet_defect(parse_field(f1_s, v), parse_field(f2_s, v), parse_point(point_s, v.size()), n).vec)
              << "\n";
        } catch (const precondition_error& e) {
          throw refutation(e.what());
        }
      };
    });
  }
  {
    auto* s = app.add_subcommand("verify-dj", "jet difference, derivation powers and iterated bracket");
    add_vars(s);
    s->add_option("--f1", f1_s)->required();
    s->add_option("--f2", f2_s)->required();
    s->add_option("--point", point_s)->required();
    s->add_option("--n", n)->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        DjReport r;
        try {
          r = verify_dj(parse_field(f1_s, v), parse_field(f2_s, v), parse_point(point_s, v.size()), n);
        } catch (const precondition_error& e) {
          throw refutation(e.what());
        }
        out << "jet difference:   " << to_string(r.jet_difference.vec) << "\n";
        out << "derivation power: " << to_string(r.derivation_power) << "\n";
        out << "iterated bracket: " << to_string(r.bracket) << "\n";
        out << "agree: " << (r.agree ? "yes" : "no") << "\n";
        if (!r.agree) throw refutation("the three computations disagree");
      };
    });
  }
  {
    auto* s = app.add_subcommand("rank", "rank of the generators at a point");
    add_vars(s);
    s->add_option("--gens", gens_s, "fields separated by ';'")->required();
    s->add_option("--point", point_s)->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        out << rank_at(Distribution(v.size(), parse_fields(gens_s, v)), parse_point(point_s, v.size())) << "\n";
      };
    });
  }
  {
    auto* s = app.add_subcommand("involutive", "bounded-degree involutivity certificate");
    add_vars(s);
    s->add_option("--gens", gens_s)->required();
    s->add_option("--degree", degree, "coefficient degree bound")->capture_default_str();
    s->add_option("--radius", radius, "counterexample grid radius")->capture_default_str();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        const Distribution f(v.size(), parse_fields(gens_s, v));
        const auto verdict = involutivity_certificate(f, degree, radius);
        if (const auto* c = std::get_if<InvolutivityCertificate>(&verdict)) {
          out << "involutive (certificate, degree <= " << c->degree_bound << ")\n";
          for (const auto& r : c->relations) out << "  " << detail::relation_string(r, v) << "\n";
        } else if (const auto* p = std::get_if<CounterexamplePoint>(&verdict)) {
          out << "not involutive: [D" << p->i + 1 << ",D" << p->j + 1 << "] leaves the span at " << to_string(p->point)
              << "\n";
          throw refutation("counterexample found");
        } else {
          out << "inconclusive: no certificate up to degree " << std::get<NotFoundUpTo>(verdict).degree_bound
              << " and no counterexample on the grid\n";
        }
      };
    });
  }
  {
    auto* s = app.add_subcommand("strata", "sample rank strata on a rational grid");
    add_vars(s);
    s->add_option("--gens", gens_s)->required();
    s->add_option("--grid", grid_s, "x=start:stop:step, ...")->required();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        const auto rep = strata_sample(Distribution(v.size(), parse_fields(gens_s, v)), parse_grid(grid_s, v));
        for (const auto& [r, pts] : rep.strata) {
          out << "rank " << r << ": " << pts.size() << " point" << (pts.size() == 1 ? "" : "s") << "\n";
          for (const auto& p : pts) out << "  " << to_string(p) << "\n";
        }
      };
    });
  }
  {
    auto* s = app.add_subcommand("invariance", "rank-stratum invariance along a truncated flow");
    add_vars(s);
    s->add_option("--gens", gens_s)->required();
    s->add_option("--combo", combo_s, "coefficients of D in the generators, separated by ';'")->required();
    s->add_option("--point", point_s)->required();
    s->add_option("--order", inv_order)->capture_default_str();
    s->callback([&] {
      action = [&] {
        const auto v = vars();
        const Distribution f(v.size(), parse_fields(gens_s, v));
        std::vector<Poly> combo;
        for (const auto& p : detail::split(detail::whole(combo_s), ';')) combo.push_back(detail::parse_poly_piece(p, v));
        const auto rep = stratum_invariance_check(f, combo, parse_point(point_s, v.size()), inv_order);
        out << "rank " << rep.rank << ", " << rep.minors_checked << " minors of size " << rep.rank + 1 << "\n";
        for (const auto& m : rep.violations) {
          out << "  violated: rows (";
          for (std::size_t k = 0; k < m.rows.size(); ++k) out << (k ? "," : "") << m.rows[k];
          out << ") cols (";
          for (std::size_t k = 0; k < m.cols.size(); ++k) out << (k ? "," : "") << m.cols[k];
          out << ") first nonzero at t^" << m.first_nonzero_order << " with coefficient " << m.coefficient << "\n";
        }
        if (rep.holds()) out << "invariant mod t^" << inv_order + 1 << "\n";
        else throw refutation("the flow leaves the rank stratum");
      };
    });
  }
  {
    auto* s = app.add_subcommand("cohomology", "solve delta(lambda) = nu on the two-chart curve");
    s->add_option("--transition", rule_s, "generator transition rule in z (rows ';', entries ',')")
        ->default_val("1");
    s->add_option("--nu", nu_s, "nu_01 in chart-0 terms, one Laurent polynomial in z per generator")->required();
    s->add_option("--window", window_s, "lo:hi")->default_val("-8:8");
    s->add_flag("--expect-unobstructed", expect_unobstructed);
    s->callback([&] {
      action = [&] {
        const std::vector<std::string> z{"z"};
        const auto t = detail::parse_rule(rule_s, z);
        const auto w = parse_window(window_s);
        Section nu;
        for (const auto& p : detail::split(detail::whole(nu_s), ',')) nu.push_back(detail::parse_laurent_piece(p, z));
        const auto sol = solve_coboundary({nu, negate(nu), w}, t);
        if (const auto* l = std::get_if<Cochain0>(&sol)) {
          out << "lambda0: " << to_string(l->lambda[0], "z") << "\n";
          out << "lambda1: " << to_string(l->lambda[1], "w") << "\n";
        } else {
          const auto& ob = std::get<Obstruction>(sol);
          out << "obstructed: residual " << to_string(ob.residual, "z") << ", cokernel dimension " << ob.cokernel_dim
              << "\n";
          if (expect_unobstructed) throw refutation("obstruction found");
        }
      };
    });
  }
  {
    auto* s = app.add_subcommand("lift", "lift a first-order deformation along the presented sheaf");
    s->add_option("--scenario", scenario_s, "scenario file")->required();
    s->add_option("--order", lift_order, "target order (default: the scenario's [order])");
    s->callback([&] {
      action = [&] {
        const Scenario sc = parse_scenario(detail::read_file(scenario_s));
        try {
          out << render_transcript(lift_to_order(sc, lift_order.value_or(sc.order)));
        } catch (const lift_obstructed& e) {
          out << "obstructed at order " << e.order() << ": nu01 " << to_string(e.cochain().nu01, sc.curve.param(0))
              << ", residual " << to_string(e.obstruction().residual, sc.curve.param(0)) << ", cokernel dimension "
              << e.obstruction().cokernel_dim << "\n";
          throw refutation(e.what());
        }
      };
    });
  }

  std::vector<std::string> argv_s{"jetlift"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_s) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }

  try {
    if (action) action();
    return exit_code::ok;
  } catch (const refutation& e) {
    err << e.what() << "\n";
    return exit_code::refuted;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }
}

}  // namespace jetlift
