#pragma once

// Shared helpers for the unit suites: seeded random expression trees and
// random polynomial curves. Everything is deterministic given the seed.

#include <diffalg/diffalg.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

using namespace diffalg;

/// Seeded generator of raw (un-normalized) expression trees and of canonical
/// expressions. The alphabet is fixed: symbols x y z t u, atom bases x y z of
/// order 1..3, integer exponents in [-3, 3], small rational constants.
class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  Expr leaf() {
    switch (pick(4)) {
      case 0: {
        int num = 0;
        while (num == 0) num = std::uniform_int_distribution<int>(-6, 6)(rng_);
        return Expr::constant(Rational(num, 1 + pick(4)));
      }
      case 1:
      case 2: {
        static const char* const names[] = {"x", "y", "z", "t", "u"};
        return Expr::symbol(names[pick(5)]);
      }
      default: {
        static const char* const bases[] = {"x", "y", "z"};
        return Expr::atom(bases[pick(3)], 1 + pick(3));
      }
    }
  }

  /// Raw tree of at most the given depth.
  Expr tree(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(6)) {
      case 0: {
        std::vector<Expr> ts;
        for (int i = 0, n = 2 + pick(2); i < n; ++i) ts.push_back(tree(depth - 1));
        return Expr::raw_sum(std::move(ts));
      }
      case 1: {
        std::vector<Expr> fs;
        for (int i = 0, n = 2 + pick(2); i < n; ++i) fs.push_back(tree(depth - 1));
        return Expr::raw_product(std::move(fs));
      }
      case 2: {
        int e = 0;
        while (e == 0) e = std::uniform_int_distribution<int>(-3, 3)(rng_);
        return Expr::raw_pow(tree(depth - 1), Rational(e));
      }
      case 3: {
        static const char* const fns[] = {"sin", "cos", "exp", "ln"};
        return Expr::raw_function(fns[pick(4)], tree(depth - 1));
      }
      default:
        return leaf();
    }
  }

  /// Raw tree whose normalization is defined (the rare draw that collapses to
  /// zero under a negative power is rerolled).
  Expr normalizable_tree(int depth) {
    for (;;) {
      Expr t = tree(depth);
      try {
        (void)normalize(t);
        return t;
      } catch (const DomainError&) {
      }
    }
  }

  Expr canonical(int depth = 3) { return normalize(normalizable_tree(depth)); }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

inline UnivariatePoly random_poly(std::mt19937_64& rng, const std::string& var, int max_degree,
                                  int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> deg_dist(0, max_degree);
  std::uniform_int_distribution<int> coeff_dist(lo, hi);
  std::vector<Rational> coeffs(static_cast<std::size_t>(deg_dist(rng)) + 1);
  for (Rational& c : coeffs) c = coeff_dist(rng);
  return UnivariatePoly(var, std::move(coeffs));
}

}  // namespace testutil
