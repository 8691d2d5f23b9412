// Core expression layer: canonical form, equality, substitution, occurrence
// sets, and the structural total order.

#include <diffalg/diffalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace diffalg;
using testutil::ExprGen;

namespace {

Expr sym(const char* n) { return Expr::symbol(n); }
Expr atom(const char* b, int k) { return Expr::atom(b, k); }

}  // namespace

TEST_CASE("normalize collapses additive and multiplicative identities", "[expr]") {
  CHECK(normalize(Expr::raw_sum({sym("x"), Expr::integer(0)})) == sym("x"));
  CHECK(Expr::sum({sym("x"), Expr::integer(0)}) == sym("x"));

  Expr dxdx = Expr::product({atom("x", 1), atom("x", 1)});
  REQUIRE(dxdx.kind() == ExprKind::Power);
  CHECK(dxdx.base() == atom("x", 1));
  CHECK(dxdx.exponent() == 2);

  Expr merged = Expr::sum({Expr::integer(2) * sym("x"), Expr::integer(3) * sym("x")});
  CHECK(merged == Expr::integer(5) * sym("x"));
}

TEST_CASE("normalize rejects zero base with negative exponent", "[expr]") {
  CHECK_THROWS_AS(Expr::pow(Expr::integer(0), Rational(-2)), DomainError);
  // A base that only collapses to zero during normalization hits the same rule.
  Expr hidden_zero = Expr::raw_sum({sym("x"), Expr::integer(-1) * sym("x")});
  CHECK_THROWS_AS(normalize(Expr::raw_pow(hidden_zero, Rational(-1))), DomainError);
}

TEST_CASE("equals works up to canonical form", "[expr]") {
  CHECK(equals(differentiate(pow(sym("x"), 3)),
               Expr::integer(3) * pow(sym("x"), 2) * atom("x", 1)));
  CHECK(equals(sym("x") + sym("y"), sym("y") + sym("x")));
  // dx^2 means (dx)^2, which is not the differential of x^2.
  CHECK_FALSE(equals(pow(atom("x", 1), 2), differentiate(pow(sym("x"), 2))));
}

TEST_CASE("substitution is simultaneous and normalizing", "[expr]") {
  Expr x = sym("x"), t = sym("t");

  SubstitutionMap x_to_t2{{x, pow(t, 2)}};
  CHECK(substitute(pow(x, 3), x_to_t2) == pow(t, 6));

  CHECK(substitute(Expr::raw_sum({x, x, Expr::integer(0)}), {}) ==
        normalize(Expr::raw_sum({x, x})));

  // dy/dx with both differentials bound by their curve values: 6t^5/2t = 3t^4.
  Expr dt = atom("t", 1);
  SubstitutionMap curve{{atom("y", 1), Expr::integer(6) * pow(t, 5) * dt},
                        {atom("x", 1), Expr::integer(2) * t * dt}};
  CHECK(substitute(atom("y", 1) / atom("x", 1), curve) == Expr::integer(3) * pow(t, 4));

  // Simultaneous, not sequential: swapping x and y must not cascade.
  SubstitutionMap swap{{sym("x"), sym("y")}, {sym("y"), sym("x")}};
  CHECK(substitute(sym("x") + Expr::integer(2) * sym("y"), swap) ==
        sym("y") + Expr::integer(2) * sym("x"));
}

TEST_CASE("occurrence sets report exactly the used atoms and symbols", "[expr]") {
  Expr rhs = parse("d^2y/dx^2 - dy/dx * d^2x/dx^2");
  std::set<DiffAtom> atoms = free_atoms(rhs);
  CHECK(atoms == std::set<DiffAtom>{DiffAtom(Symbol("x"), 1), DiffAtom(Symbol("x"), 2),
                                    DiffAtom(Symbol("y"), 1), DiffAtom(Symbol("y"), 2)});
  CHECK(free_symbols(rhs).empty());

  CHECK(free_atoms(pow(sym("x"), 3)).empty());
  CHECK(free_symbols(sym("x") * atom("y", 1) + sym("y") * atom("x", 1)) ==
        std::set<Symbol>{Symbol("x"), Symbol("y")});
}

TEST_CASE("normalize is idempotent on random trees", "[expr]") {
  ExprGen gen(2024);
  for (int i = 0; i < 1000; ++i) {
    Expr raw = gen.normalizable_tree(1 + gen.pick(6));  // depth 1..6
    Expr once = normalize(raw);
    Expr twice = normalize(once);
    REQUIRE(once == twice);
  }
}

TEST_CASE("sum and product are commutative and associative up to equality", "[expr]") {
  ExprGen gen(77);
  for (int i = 0; i < 200; ++i) {
    Expr a = gen.canonical(2), b = gen.canonical(2), c = gen.canonical(2);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("renaming a symbol to itself is the identity", "[expr]") {
  ExprGen gen(31);
  for (int i = 0; i < 200; ++i) {
    Expr e = gen.normalizable_tree(3);
    SubstitutionMap self{{sym("x"), sym("x")}, {sym("y"), sym("y")}, {sym("t"), sym("t")}};
    CHECK(substitute(e, self) == normalize(e));
  }
}

TEST_CASE("structural order is a strict total order", "[expr]") {
  ExprGen gen(4711);
  std::vector<Expr> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(gen.canonical(2));

  for (const Expr& a : pool) CHECK(compare(a, a) == std::strong_ordering::equal);

  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      auto ab = compare(pool[i], pool[j]);
      auto ba = compare(pool[j], pool[i]);
      // antisymmetry: exactly one of <, =, > holds, consistently both ways
      if (ab == std::strong_ordering::less) CHECK(ba == std::strong_ordering::greater);
      if (ab == std::strong_ordering::greater) CHECK(ba == std::strong_ordering::less);
      if (ab == std::strong_ordering::equal) CHECK(ba == std::strong_ordering::equal);
    }

  // transitivity via sorting: a sorted pool must be totally ordered pairwise
  std::sort(pool.begin(), pool.end(), ExprLess{});
  for (std::size_t i = 0; i + 1 < pool.size(); ++i)
    CHECK(compare(pool[i + 1], pool[i]) != std::strong_ordering::less);
}

TEST_CASE("atoms order by base then order, below symbols", "[expr]") {
  CHECK(compare(atom("x", 1), atom("x", 2)) == std::strong_ordering::less);
  CHECK(compare(atom("x", 2), atom("y", 1)) == std::strong_ordering::less);
  CHECK(compare(sym("z"), atom("a", 1)) == std::strong_ordering::less);
  CHECK(compare(Expr::integer(7), sym("a")) == std::strong_ordering::less);
}

TEST_CASE("atom construction rejects order zero", "[expr]") {
  CHECK_THROWS_AS(DiffAtom(Symbol("x"), 0), DomainError);
  CHECK_THROWS_AS(Expr::atom("x", -1), DomainError);
  CHECK_THROWS_AS(Symbol(""), DomainError);
}
