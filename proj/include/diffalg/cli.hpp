#pragma once

// Command-line front end. Every operation of the library is reachable as a
// subcommand; run_cli is a plain function over argument strings and output
// streams so the whole surface is testable in-process.
//
// Exit codes (stable contract):
//   0  success / verification passed
//   1  verification or numeric failure (counterexample, singular value, ...)
//   2  usage or parse error (bad flags, bad expression, bad polynomial)
//
// Output styles: plain (default), latex, json. The --style flag applies to
// every subcommand; DIFFALG_STYLE sets the default. JSON schemas are
// documented in the README and exercised by the test suite.

#include <diffalg/differential.hpp>
#include <diffalg/expansion.hpp>
#include <diffalg/ode.hpp>
#include <diffalg/oracle.hpp>
#include <diffalg/parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace diffalg {

namespace cli_detail {

using nlohmann::json;

enum class Style { plain, latex, json_out };

inline Style parse_style(const std::string& s) {
  if (s == "plain") return Style::plain;
  if (s == "latex") return Style::latex;
  if (s == "json") return Style::json_out;
  throw CLI::ValidationError("--style", "must be one of plain, latex, json");
}

inline std::string render(const Expr& e, Style style) {
  return format(e, style == Style::latex ? OutputStyle::latex : OutputStyle::plain);
}

inline std::string num_str(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline json expr_json(const Expr& e) {
  return json{{"plain", format(e, OutputStyle::plain)}, {"latex", format(e, OutputStyle::latex)}};
}

inline json rational_json(const DiffRational& r) {
  json j = expr_json(to_expr(r));
  j["numerator"] = format(r.num().to_expr());
  j["denominator"] = format(r.den().to_expr());
  return j;
}

inline json report_json(const IdentityReport& r) {
  json j{{"identity", r.identity},
         {"trials", r.trials},
         {"max_rel_err", r.max_rel_err},
         {"tolerance", r.tolerance},
         {"passed", r.passed()}};
  if (r.counterexample) {
    j["counterexample"] = json{{"parametrization", r.counterexample->parametrization},
                               {"lhs", r.counterexample->lhs},
                               {"rhs", r.counterexample->rhs},
                               {"rel_err", r.counterexample->rel_err}};
  }
  return j;
}

inline void print_identity_report(const IdentityReport& r, Style style, std::ostream& out) {
  if (style == Style::json_out) {
    out << report_json(r).dump(2) << "\n";
    return;
  }
  out << "identity:     " << r.identity << "\n";
  out << "trials:       " << r.trials << "\n";
  out << "max rel err:  " << num_str(r.max_rel_err) << "  (tolerance " << num_str(r.tolerance)
      << ")\n";
  if (r.counterexample) {
    out << "counterexample: " << r.counterexample->parametrization << "\n";
    out << "  lhs = " << num_str(r.counterexample->lhs)
        << ", rhs = " << num_str(r.counterexample->rhs)
        << ", rel err = " << num_str(r.counterexample->rel_err) << "\n";
    out << "FAIL\n";
  } else {
    out << "PASS\n";
  }
}

// --- subcommand bodies -----------------------------------------------------

inline int cmd_diff(const std::string& expr_text, int n, Style style, std::ostream& out) {
  Expr input = resolve_pending(parse_with_pending(expr_text));
  Expr result = nth_differential(input, n);
  if (style == Style::json_out) {
    json j{{"command", "diff"}, {"input", expr_text}, {"n", n}, {"result", expr_json(result)}};
    out << j.dump(2) << "\n";
  } else {
    out << render(result, style) << "\n";
  }
  return 0;
}

inline int cmd_expand(const std::string& dep, const std::string& indep, int n,
                      const std::string& progression, Style style, std::ostream& out) {
  if (dep == indep) throw DomainError("dependent and independent symbols must differ");
  DerivativeForm form = arbogast_expand(Symbol(dep), Symbol(indep), n);
  DiffRational result = form.expansion;
  if (!progression.empty()) result = reduce_with_progression(result, Progression{Symbol(progression)});
  if (style == Style::json_out) {
    json j{{"command", "expand"},
           {"dependent", dep},
           {"independent", indep},
           {"n", n},
           {"progression", progression.empty() ? json(nullptr) : json(progression)},
           {"result", rational_json(result)}};
    out << j.dump(2) << "\n";
  } else {
    out << render(to_expr(result), style) << "\n";
  }
  return 0;
}

inline int cmd_verify_chain2(const std::string& y_text, const std::string& x_text, Style style,
                             std::ostream& out) {
  ChainRuleReport r = verify_second_chain_rule(parse(y_text), parse(x_text));
  bool passed = r.faa_matches_direct && r.full_identity_holds;
  if (style == Style::json_out) {
    json j{{"command", "verify"},
           {"check", "chain2"},
           {"y", y_text},
           {"x", x_text},
           {"naive", expr_json(r.naive)},
           {"direct", expr_json(r.direct)},
           {"faa_di_bruno", expr_json(r.faa_di_bruno)},
           {"naive_matches_direct", r.naive_matches_direct},
           {"faa_matches_direct", r.faa_matches_direct},
           {"full_identity_holds", r.full_identity_holds},
           {"passed", passed}};
    out << j.dump(2) << "\n";
  } else {
    out << "naive (fraction square):   " << render(r.naive, style) << "\n";
    out << "direct (substitute first): " << render(r.direct, style) << "\n";
    out << "faa di bruno:              " << render(r.faa_di_bruno, style) << "\n";
    out << "naive matches direct:      " << (r.naive_matches_direct ? "yes" : "no") << "\n";
    out << "faa matches direct:        " << (r.faa_matches_direct ? "yes" : "no") << "\n";
    out << "free-atom chain identity:  " << (r.full_identity_holds ? "holds" : "FAILS") << "\n";
    out << (passed ? "PASS" : "FAIL") << "\n";
  }
  return passed ? 0 : 1;
}

inline int cmd_verify_inverse(const std::string& d2_text, const std::string& d1_text, Style style,
                              std::ostream& out) {
  DiffRational d2 = from_expr(parse(d2_text));
  DiffRational d1 = from_expr(parse(d1_text));
  DiffRational inverted = invert_second_derivative(d2, d1);
  DiffRational back = invert_second_derivative(inverted, d1.pow(-1));
  bool involution = back == d2;
  if (style == Style::json_out) {
    json j{{"command", "verify"},
           {"check", "inverse"},
           {"d2", d2_text},
           {"d1", d1_text},
           {"result", rational_json(inverted)},
           {"involution_holds", involution},
           {"passed", involution}};
    out << j.dump(2) << "\n";
  } else {
    out << "swapped second derivative: " << render(to_expr(inverted), style) << "\n";
    out << "involution returns input:  " << (involution ? "yes" : "NO") << "\n";
    out << (involution ? "PASS" : "FAIL") << "\n";
  }
  return involution ? 0 : 1;
}

inline int cmd_verify_dxdx(Style style, std::ostream& out) {
  DxdxReport r = verify_dxdx_subtlety();
  if (style == Style::json_out) {
    json j{{"command", "verify"},
           {"check", "dxdx"},
           {"full_form", rational_json(r.full_form)},
           {"bare_ratio", rational_json(r.bare_ratio)},
           {"full_form_is_zero", r.full_form_is_zero},
           {"bare_ratio_is_nonzero", r.bare_ratio_is_nonzero},
           {"passed", r.passed()}};
    out << j.dump(2) << "\n";
  } else {
    out << "expanded second derivative of x by x: " << render(to_expr(r.full_form), style)
        << (r.full_form_is_zero ? "  (identically zero)" : "  (NOT zero)") << "\n";
    out << "bare ratio d^2x/dx^2:                 " << render(to_expr(r.bare_ratio), style)
        << (r.bare_ratio_is_nonzero ? "  (not the zero quotient)" : "  (zero)") << "\n";
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  return r.passed() ? 0 : 1;
}

inline int cmd_verify_expansion_oracle(int n, int trials, std::uint64_t seed, double tol,
                                       Style style, std::ostream& out) {
  IdentityReport r = check_expansion_against_oracle(n, trials, seed, tol);
  print_identity_report(r, style, out);
  return r.passed() ? 0 : 1;
}

inline int cmd_solve_ode(const std::string& f_text, double y0, double yprime0, double x0,
                         double span, double step, double slope_limit, double tol, Style style,
                         std::ostream& out) {
  UnivariatePoly f = UnivariatePoly::from_expr(parse(f_text), "y");
  OdeReport r = verify_numeric(f, y0, yprime0, x0, span, step, slope_limit);
  ImplicitSolution sol = solve_by_swap(f);

  Expr y = Expr::symbol("y");
  Expr family = normalize(sol.X.to_expr() + Expr::symbol("c1") * y + Expr::symbol("c2"));
  bool ok = r.derived_branch_ok(tol);

  if (style == Style::json_out) {
    json j{{"command", "solve-ode"},
           {"f", f_text},
           {"implicit_solution", expr_json(family)},
           {"constants", json{{"c1", r.c1}, {"c2", r.c2}}},
           {"opposite_branch_constants", json{{"c1", r.c1_plus}, {"c2", r.c2_plus}}},
           {"max_residual_minus_branch", r.max_residual_minus},
           {"max_residual_plus_branch", r.max_residual_plus},
           {"step", r.step},
           {"span", r.span},
           {"x_reached", r.x_reached},
           {"truncated_at_slope_limit", r.truncated},
           {"blowup_x", r.blowup_x ? json(*r.blowup_x) : json(nullptr)},
           {"tolerance", tol},
           {"passed", ok}};
    out << j.dump(2) << "\n";
  } else {
    out << "implicit solution:     x = " << render(family, style) << "\n";
    out << "fitted constants:      c1 = " << num_str(r.c1) << ", c2 = " << num_str(r.c2) << "\n";
    out << "derived branch max residual:  " << num_str(r.max_residual_minus) << "  (tolerance "
        << num_str(tol) << ")\n";
    out << "opposite branch max residual: " << num_str(r.max_residual_plus) << "\n";
    out << "x reached:             " << num_str(r.x_reached);
    if (r.truncated) out << "  (stopped at slope limit " << num_str(r.slope_limit) << ")";
    if (r.blowup_x) out << "  (blowup near x = " << num_str(*r.blowup_x) << ")";
    out << "\n" << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

inline Parametrization parse_parametrization(const std::string& text, double t0, double dt) {
  Parametrization p;
  p.t0 = t0;
  p.dt_value = dt;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw DomainError("parametrization entries must look like sym=poly: '" + item + "'");
    std::string name = item.substr(0, eq);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
      name.erase(name.begin());
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (name.empty()) throw DomainError("empty symbol name in parametrization");
    p.bindings.emplace(Symbol(name),
                       UnivariatePoly::from_expr(parse(item.substr(eq + 1)), "t"));
  }
  if (p.bindings.empty()) throw DomainError("parametrization must bind at least one symbol");
  return p;
}

inline int cmd_eval(const std::string& expr_text, const std::string& param, double t0, double dt,
                    Style style, std::ostream& out) {
  Expr e = parse(expr_text);
  Parametrization p = parse_parametrization(param, t0, dt);
  double value = eval_diff_expr(e, p);
  if (style == Style::json_out) {
    json j{{"command", "eval"}, {"expr", expr_text},        {"param", param},
           {"t0", t0},          {"dt", dt},                 {"value", value}};
    out << j.dump(2) << "\n";
  } else {
    out << num_str(value) << "\n";
  }
  return 0;
}

}  // namespace cli_detail

/// Entry point shared by the real binary and the tests. `args` excludes the
/// program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"differential algebra engine: differentials d^k x as first-class algebra"};
  app.require_subcommand(1);
  std::string style_text = "plain";
  app.add_option("--style", style_text, "output style: plain, latex, json")
      ->envname("DIFFALG_STYLE")
      ->capture_default_str();

  // diff
  auto* diff = app.add_subcommand("diff", "apply the differential operator d to an expression");
  std::string diff_expr;
  int diff_n = 1;
  diff->add_option("expr", diff_expr, "expression, e.g. \"x^3\" or \"d(x y)\"")->required();
  diff->add_option("-n,--order", diff_n, "how many times to apply d")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // expand
  auto* expand = app.add_subcommand(
      "expand", "expand the n-th derivative of one symbol by another into differentials");
  std::string ex_dep, ex_indep, ex_prog;
  int ex_n = 1;
  expand->add_option("-d,--dependent", ex_dep, "dependent symbol")->required();
  expand->add_option("-i,--independent", ex_indep, "independent symbol")->required();
  expand->add_option("-n,--order", ex_n, "derivative order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  expand->add_option("--progression", ex_prog,
                     "reduce under this progression (its d^2 and higher vanish)");

  // verify
  auto* verify = app.add_subcommand("verify", "run one of the built-in verifications");
  verify->require_subcommand(1);
  auto* chain2 = verify->add_subcommand("chain2", "second-derivative chain rule adjudication");
  std::string ch_y = "x^3", ch_x = "t^2";
  chain2->add_option("--y", ch_y, "outer curve y as a function of x")->capture_default_str();
  chain2->add_option("--x", ch_x, "inner curve x as a function of t")->capture_default_str();
  auto* inverse = verify->add_subcommand("inverse", "second-derivative inversion and involution");
  std::string inv_d2 = "6x", inv_d1 = "3x^2";
  inverse->add_option("--d2", inv_d2, "second derivative of y by x")->capture_default_str();
  inverse->add_option("--d1", inv_d1, "first derivative of y by x")->capture_default_str();
  verify->add_subcommand("dxdx", "the d^2x/dx^2 subtlety: expanded form vs bare ratio");
  auto* exor = verify->add_subcommand("expansion-oracle",
                                      "expanded derivative vs independent jet oracle");
  int exor_n = 2, exor_trials = 100;
  std::uint64_t exor_seed = 7;
  double exor_tol = 1e-9;
  exor->add_option("-n,--order", exor_n, "derivative order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  exor->add_option("--trials", exor_trials, "number of random parametrizations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  exor->add_option("--seed", exor_seed, "random seed")->capture_default_str();
  exor->add_option("--tol", exor_tol, "relative error tolerance")->capture_default_str();

  // solve-ode
  auto* ode = app.add_subcommand("solve-ode",
                                 "solve y'' = f(y) (y')^3 by the variable swap and verify");
  std::string ode_f = "y";
  double ode_y0 = 1.0, ode_yp0 = 1.0, ode_x0 = 0.0, ode_span = 0.5, ode_step = 1e-3;
  double ode_slope = 10.0, ode_tol = 1e-6;
  ode->add_option("--f", ode_f, "polynomial f(y)")->capture_default_str();
  ode->add_option("--y0", ode_y0, "initial y")->capture_default_str();
  ode->add_option("--yprime0", ode_yp0, "initial slope y'")->capture_default_str();
  ode->add_option("--x0", ode_x0, "initial x")->capture_default_str();
  ode->add_option("--span", ode_span, "integration span in x")->capture_default_str();
  ode->add_option("--step", ode_step, "integration step")->capture_default_str();
  ode->add_option("--slope-limit", ode_slope, "stop marching beyond this |y'|")
      ->capture_default_str();
  ode->add_option("--tol", ode_tol, "residual tolerance for the derived branch")
      ->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate an expression along a parametrized curve");
  std::string eval_expr, eval_param;
  double eval_t0 = 0.0, eval_dt = 1.0;
  eval->add_option("expr", eval_expr, "expression, e.g. \"dy/dx\"")->required();
  eval->add_option("--param", eval_param, "bindings, e.g. \"x=t^2,y=t^6\"")->required();
  eval->add_option("--at", eval_t0, "parameter value t0")->capture_default_str();
  eval->add_option("--dt", eval_dt, "value of the first differential of t")
      ->capture_default_str();

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("diffalg");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Style style;
  try {
    style = parse_style(style_text);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (app.got_subcommand(diff)) return cmd_diff(diff_expr, diff_n, style, out);
    if (app.got_subcommand(expand))
      return cmd_expand(ex_dep, ex_indep, ex_n, ex_prog, style, out);
    if (app.got_subcommand(verify)) {
      if (verify->got_subcommand("chain2")) return cmd_verify_chain2(ch_y, ch_x, style, out);
      if (verify->got_subcommand("inverse")) return cmd_verify_inverse(inv_d2, inv_d1, style, out);
      if (verify->got_subcommand("dxdx")) return cmd_verify_dxdx(style, out);
      if (verify->got_subcommand("expansion-oracle"))
        return cmd_verify_expansion_oracle(exor_n, exor_trials, exor_seed, exor_tol, style, out);
    }
    if (app.got_subcommand(ode))
      return cmd_solve_ode(ode_f, ode_y0, ode_yp0, ode_x0, ode_span, ode_step, ode_slope,
                           ode_tol, style, out);
    if (app.got_subcommand(eval)) return cmd_eval(eval_expr, eval_param, eval_t0, eval_dt, style, out);
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << " (characters " << e.span().start << ".."
        << e.span().end << ")\n";
    return 2;
  } catch (const ZeroInitialSlope& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnboundSymbol& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace diffalg
