// A guided tour of the differential-algebra engine.
//
// Walks through the library's main capabilities in dependency order:
// differentials as first-class atoms, derivative forms built by the
// divide-by-dx recurrence, progression of variables, inversion of the
// second derivative, the second-order chain rule, numeric cross-checks
// against truncated-Taylor (jet) arithmetic, and the swap-trick ODE solve.
//
// Run with no arguments; output is plain text.

#include <diffalg/diffalg.hpp>

#include <iostream>
#include <string>

using namespace diffalg;

namespace {

void heading(const std::string& title) {
  std::cout << "\n== " << title << " ==\n";
}

}  // namespace

int main() {
  std::cout << "derivative-tour: differentials as independent algebraic units\n";

  heading("Differentials of expressions");
  for (const char* src : {"x^3", "x*y", "sin(x)", "x/y"}) {
    Expr e = parse(src);
    std::cout << "  d(" << src << ") = " << differentiate(e) << "\n";
  }
  std::cout << "  d^2(x y) = " << nth_differential(parse("x*y"), 2) << "\n";
  std::cout << "  d^3(x^2) = " << nth_differential(parse("x^2"), 3) << "\n";

  heading("Derivative forms by the divide-by-dx recurrence");
  for (int n = 1; n <= 3; ++n) {
    DerivativeForm form = arbogast_expand(Symbol("y"), Symbol("x"), n);
    std::cout << "  D^" << n << " y / dx^" << n << " (progression-free) = "
              << to_expr(form.expansion) << "\n";
  }

  heading("Progression of variables");
  DerivativeForm second = arbogast_expand(Symbol("y"), Symbol("x"), 2);
  std::cout << "  second derivative form        : " << to_expr(second.expansion) << "\n";
  std::cout << "  under progression x (d^2x = 0): "
            << to_expr(reduce_with_progression(second, Progression{Symbol("x")}).expansion)
            << "\n";
  Expr xy_second = nth_differential(parse("x*y"), 2);
  std::cout << "  d^2(x y)                      : " << xy_second << "\n";
  std::cout << "  ... progression x             : "
            << reduce_with_progression(xy_second, Progression{Symbol("x")}) << "\n";
  std::cout << "  ... progression y             : "
            << reduce_with_progression(xy_second, Progression{Symbol("y")}) << "\n";

  heading("Reinflating a progression-bound form");
  Expr bound = parse("x d^2y + dx^2");
  std::cout << "  input (x as independent): " << bound << "\n";
  std::cout << "  progression-free        : "
            << reinflate_second(bound, Symbol("y"), Symbol("x")) << "\n";

  heading("Inverting the second derivative (swap x and y)");
  DiffRational d2 = from_expr(parse("6x"));
  DiffRational d1 = from_expr(parse("3x^2"));
  DiffRational inv = invert_second_derivative(d2, d1);
  std::cout << "  given  d^2y/dx^2 = 6x and dy/dx = 3x^2\n";
  std::cout << "  then   d^2x/dy^2 = " << to_expr(inv) << "\n";
  DiffRational dxdy = from_expr(parse("3x^2")).pow(-1);
  DiffRational back = invert_second_derivative(inv, dxdy);
  std::cout << "  inverting again returns " << to_expr(back) << " (involution)\n";

  heading("Second-order chain rule, y = x^3 with x = t^2");
  ChainRuleReport chain = verify_second_chain_rule(parse("x^3"), parse("t^2"));
  std::cout << "  naive product (d^2y/dx^2)(dx/dt)^2 : " << chain.naive << "\n";
  std::cout << "  direct substitution d^2y/dt^2     : " << chain.direct << "\n";
  std::cout << "  two-term composition formula      : " << chain.faa_di_bruno << "\n";
  std::cout << "  full differential identity        : "
            << (chain.full_identity_holds ? "holds exactly" : "FAILS") << "\n";

  heading("Why d^2x/dx^2 alone is not zero");
  DxdxReport dxdx = verify_dxdx_subtlety();
  std::cout << "  full second-derivative form of x by x: " << to_expr(dxdx.full_form) << "\n";
  std::cout << "  bare ratio d^2x/dx^2                 : " << to_expr(dxdx.bare_ratio) << "\n";

  heading("Numeric cross-check on a polynomial curve");
  Parametrization p;
  p.bindings.emplace(Symbol("x"), UnivariatePoly("t", {Rational(0), Rational(0), Rational(1)}));
  p.bindings.emplace(Symbol("y"),
                     UnivariatePoly("t", {Rational(0), Rational(0), Rational(0), Rational(0),
                                          Rational(0), Rational(0), Rational(1)}));
  p.t0 = 2.0;
  std::cout << "  curve: " << p.describe() << "\n";
  double lhs = eval_diff_expr(to_expr(second.expansion), p);
  double rhs = quotient_derivative_oracle(p.bindings.at(Symbol("x")).pow(3),
                                          p.bindings.at(Symbol("x")), 2, p.t0);
  std::cout << "  expansion evaluated on the curve : " << lhs << "\n";
  std::cout << "  independent quotient oracle      : " << rhs << "\n";

  heading("Randomized identity check (seeded)");
  IdentityReport rep = check_expansion_against_oracle(2, 25, 7);
  std::cout << "  second-derivative expansion vs oracle, 25 random curves: "
            << (rep.passed() ? "pass" : "fail") << " (max rel err "
            << rep.max_rel_err << ")\n";

  heading("ODE y'' = f(y) (y')^3 via the swap trick");
  UnivariatePoly f("y", {Rational(0), Rational(1)});  // f(y) = y
  ImplicitSolution sol = solve_by_swap(f);
  std::cout << "  f(y) = y, swapped equation x''(y) = -f(y)\n";
  std::cout << "  implicit solution x = " << sol.X.to_expr() << " + c1 y + c2\n";
  auto [c1, c2] = fit_constants(sol, 1.0, 1.0, 0.0);
  std::cout << "  constants from y(0) = 1, y'(0) = 1: c1 = " << c1 << ", c2 = " << c2 << "\n";
  OdeReport ode = verify_numeric(f, 1.0, 1.0, 0.0, 0.5, 1e-3);
  std::cout << "  RK4 residual, derived sign branch : " << ode.max_residual_minus << "\n";
  std::cout << "  RK4 residual, opposite branch     : " << ode.max_residual_plus << "\n";
  if (ode.truncated)
    std::cout << "  (integration trusted up to x = " << ode.x_reached
              << "; the trajectory steepens beyond the slope limit)\n";

  std::cout << "\ndone\n";
  return 0;
}
