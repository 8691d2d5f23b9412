// The context-free differential operator d(·): structural rules, iterated
// application, equation form, and its numeric soundness along curves.

#include <diffalg/diffalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

#include <cmath>

using namespace diffalg;
using testutil::ExprGen;

namespace {

Expr sym(const char* n) { return Expr::symbol(n); }
Expr atom(const char* b, int k) { return Expr::atom(b, k); }

Parametrization curves_at(double t0) {
  Parametrization p;
  p.t0 = t0;
  p.bindings.emplace(Symbol("x"), UnivariatePoly("t", {Rational(1), Rational(2), Rational(1)}));
  p.bindings.emplace(Symbol("y"),
                     UnivariatePoly("t", {Rational(0), Rational(-1), Rational(0), Rational(2)}));
  p.bindings.emplace(Symbol("z"), UnivariatePoly("t", {Rational(2), Rational(3)}));
  p.bindings.emplace(Symbol("q"), UnivariatePoly("t", {Rational(0), Rational(1), Rational(1)}));
  p.bindings.emplace(Symbol("t"), UnivariatePoly("t", {Rational(0), Rational(1)}));
  return p;
}

}  // namespace

TEST_CASE("base differentiation rules", "[differential]") {
  CHECK(differentiate(pow(sym("x"), 3)) == Expr::integer(3) * pow(sym("x"), 2) * atom("x", 1));
  CHECK(differentiate(Expr::integer(5)) == Expr::integer(0));
  CHECK(differentiate(Expr::constant(Rational(-7, 3))) == Expr::integer(0));
  CHECK(differentiate(sym("x")) == atom("x", 1));
  CHECK(differentiate(atom("x", 1)) == atom("x", 2));
  CHECK(differentiate(atom("x", 5)) == atom("x", 6));
  CHECK(differentiate(sin(sym("q"))) == cos(sym("q")) * atom("q", 1));
  CHECK(differentiate(cos(sym("q"))) == -sin(sym("q")) * atom("q", 1));
  CHECK(differentiate(exp(sym("x"))) == exp(sym("x")) * atom("x", 1));
  CHECK(differentiate(ln(sym("x"))) == atom("x", 1) / sym("x"));
}

TEST_CASE("differential of a differential-bearing term", "[differential]") {
  // d(3x^2 dx) = 3x^2 d^2x + 6x dx^2
  Expr input = Expr::integer(3) * pow(sym("x"), 2) * atom("x", 1);
  Expr expected = Expr::integer(3) * pow(sym("x"), 2) * atom("x", 2) +
                  Expr::integer(6) * sym("x") * pow(atom("x", 1), 2);
  CHECK(differentiate(input) == expected);
}

TEST_CASE("iterated differentials", "[differential]") {
  CHECK(nth_differential(sym("x"), 1) == atom("x", 1));
  CHECK(nth_differential(sym("x"), 2) == atom("x", 2));
  CHECK(nth_differential(sym("x"), 7) == atom("x", 7));

  Expr expected = sym("x") * atom("y", 2) + Expr::integer(2) * atom("x", 1) * atom("y", 1) +
                  sym("y") * atom("x", 2);
  CHECK(nth_differential(sym("x") * sym("y"), 2) == expected);

  for (int k = 1; k <= 5; ++k) CHECK(nth_differential(Expr::integer(9), k) == Expr::integer(0));

  CHECK_THROWS_AS(nth_differential(sym("x"), 0), DomainError);
}

TEST_CASE("differentiating both sides of an equation", "[differential]") {
  auto [l1, r1] = differentiate_equation(pow(sym("z"), 2), sin(sym("q")));
  CHECK(l1 == Expr::integer(2) * sym("z") * atom("z", 1));
  CHECK(r1 == cos(sym("q")) * atom("q", 1));

  auto [l2, r2] = differentiate_equation(sym("x") * sym("y"), Expr::integer(3));
  CHECK(l2 == sym("x") * atom("y", 1) + sym("y") * atom("x", 1));
  CHECK(r2 == Expr::integer(0));

  auto [l3, r3] = differentiate_equation(sym("x"), sym("x"));
  CHECK(l3 == atom("x", 1));
  CHECK(r3 == atom("x", 1));
}

TEST_CASE("the quotient rule falls out of negative powers", "[differential]") {
  Expr u = sym("u"), v = sym("v");
  Expr lhs = differentiate(u / v);
  Expr rhs = (v * differentiate(u) - u * differentiate(v)) / pow(v, 2);
  CHECK(equals(lhs, rhs));
}

TEST_CASE("linearity over random expressions", "[differential]") {
  ExprGen gen(808);
  for (int i = 0; i < 100; ++i) {
    Expr u = gen.canonical(2), v = gen.canonical(2);
    Expr a = Expr::constant(Rational(gen.pick(7) - 3));
    Expr b = Expr::constant(Rational(gen.pick(7) - 3));
    CHECK(differentiate(a * u + b * v) == normalize(a * differentiate(u) + b * differentiate(v)));
  }
}

TEST_CASE("Leibniz rule over random expressions", "[differential]") {
  ExprGen gen(909);
  for (int i = 0; i < 100; ++i) {
    Expr u = gen.canonical(2), v = gen.canonical(2);
    CHECK(equals(differentiate(u * v), u * differentiate(v) + v * differentiate(u)));
  }
}

TEST_CASE("d commutes with renaming a symbol", "[differential]") {
  ExprGen gen(1212);
  // w is outside the generator alphabet, so the rename is collision-free.
  SubstitutionMap rename{{sym("x"), sym("w")}};
  // The generator emits atoms of order <= 3 and one application of d adds
  // at most one order, so renaming atoms through order 8 covers both sides.
  for (int k = 1; k <= 8; ++k) rename.emplace(Expr::atom("x", k), Expr::atom("w", k));
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.canonical(2);
    CHECK(differentiate(substitute(e, rename)) == substitute(differentiate(e), rename));
  }
}

TEST_CASE("pending differentials resolve to the operator's result", "[differential]") {
  CHECK(resolve_pending(parse_with_pending("d(x y)")) ==
        differentiate(sym("x") * sym("y")));
  CHECK(resolve_pending(parse_with_pending("d(x^3)")) == differentiate(pow(sym("x"), 3)));
  CHECK(resolve_pending(parse_with_pending("d(d(x y))")) ==
        nth_differential(sym("x") * sym("y"), 2));
  CHECK(resolve_pending(parse_with_pending("1 + d(x^2)")) ==
        Expr::integer(1) + Expr::integer(2) * sym("x") * atom("x", 1));
  // Applying the operator to an unresolved wrapper is a usage error.
  CHECK_THROWS_AS(differentiate(parse_with_pending("d(x y)")), DomainError);
}

TEST_CASE("numeric soundness: d(e) evaluates to the parameter derivative", "[differential]") {
  const char* const exprs[] = {
      "x^3", "x*y", "sin(x)", "exp(z)", "x^2 + 3y", "x dy + y dx", "cos(q) dq", "z^2 dz",
  };
  const double t0s[] = {0.3, 1.1, -0.7};
  for (const char* src : exprs) {
    Expr e = parse(src);
    Expr de = differentiate(e);
    for (double t0 : t0s) {
      const double h = 1e-5;
      double g_plus = eval_diff_expr(e, curves_at(t0 + h));
      double g_minus = eval_diff_expr(e, curves_at(t0 - h));
      double derivative_fd = (g_plus - g_minus) / (2.0 * h);
      double de_val = eval_diff_expr(de, curves_at(t0));
      INFO(src << " at t0 = " << t0);
      CHECK(std::abs(de_val - derivative_fd) <=
            1e-4 * std::max({std::abs(de_val), std::abs(derivative_fd), 1.0}));
    }
  }
}
