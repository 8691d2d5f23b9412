#pragma once

// The context-free differential operator. d acts structurally, with no
// notion of an independent variable:
//
//   d(c)      = 0                         constants
//   d(x)      = dx                        symbols become order-1 atoms
//   d(d^k x)  = d^(k+1) x                 atoms climb one order
//   d(u + v)  = du + dv
//   d(u v)    = u dv + v du               n-ary Leibniz
//   d(u^p)    = p u^(p-1) du              rational p, including negative
//                                         and fractional exponents
//   d(f(u))   = f'(u) du                  f' from the function registry
//
// Because no variable is privileged, d(dy/dx) mechanically produces the
// quotient-rule expansion (d2y dx - dy d2x) / dx^2 with the second-order
// atoms kept as live algebraic objects.

#include <diffalg/expr.hpp>

#include <vector>

namespace diffalg {

/// One application of d. Input and output are normalized expressions; a
/// pending-differential node in the input throws DomainError (resolve it
/// first).
inline Expr differentiate(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr::integer(0);
    case ExprKind::Symbol:
      return Expr::atom(e.symbol_value(), 1);
    case ExprKind::Atom: {
      const DiffAtom& a = e.atom_value();
      return Expr::atom(a.base, a.order + 1);
    }
    case ExprKind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(e.terms().size());
      for (const Expr& t : e.terms()) parts.push_back(differentiate(t));
      return Expr::sum(parts);
    }
    case ExprKind::Product: {
      const std::vector<Expr>& fs = e.factors();
      std::vector<Expr> parts;
      parts.reserve(fs.size());
      for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<Expr> piece;
        piece.reserve(fs.size());
        for (std::size_t j = 0; j < fs.size(); ++j)
          piece.push_back(i == j ? differentiate(fs[j]) : fs[j]);
        parts.push_back(Expr::product(piece));
      }
      return Expr::sum(parts);
    }
    case ExprKind::Power: {
      const Rational& p = e.exponent();
      return Expr::product(
          {Expr::constant(p), Expr::pow(e.base(), p - 1), differentiate(e.base())});
    }
    case ExprKind::Function: {
      const FunctionDef* def = find_function(e.function_name());
      if (!def) throw DomainError("no derivative rule for function '" + e.function_name() + "'");
      return def->chain_factor(e.argument()) * differentiate(e.argument());
    }
    case ExprKind::PendingDiff:
      throw DomainError("cannot differentiate an unresolved pending differential");
  }
  throw DomainError("unreachable expression kind");
}

/// n-fold application of d; n must be >= 1.
inline Expr nth_differential(const Expr& e, int n) {
  if (n < 1) throw DomainError("differential count must be >= 1");
  Expr out = differentiate(e);
  for (int i = 1; i < n; ++i) out = differentiate(out);
  return out;
}

namespace detail {

inline Expr resolve_pending_impl(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Symbol:
    case ExprKind::Atom:
      return e;
    case ExprKind::PendingDiff:
      return differentiate(normalize(resolve_pending_impl(e.argument())));
    case ExprKind::Function:
      return Expr::raw_function(e.function_name(), resolve_pending_impl(e.argument()));
    case ExprKind::Power:
      return Expr::raw_pow(resolve_pending_impl(e.base()), e.exponent());
    case ExprKind::Product: {
      std::vector<Expr> fs;
      fs.reserve(e.factors().size());
      for (const Expr& f : e.factors()) fs.push_back(resolve_pending_impl(f));
      return Expr::raw_product(std::move(fs));
    }
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      ts.reserve(e.terms().size());
      for (const Expr& t : e.terms()) ts.push_back(resolve_pending_impl(t));
      return Expr::raw_sum(std::move(ts));
    }
  }
  throw DomainError("unreachable expression kind");
}

}  // namespace detail

/// Replaces every pending d(...) wrapper bottom-up with the differential of
/// its (already resolved) argument, then normalizes. Nested pendings are
/// legal: d(d(x y)) resolves the inner product first.
inline Expr resolve_pending(const Expr& e) {
  return normalize(detail::resolve_pending_impl(e));
}

/// Differentiates both sides of an equation lhs = rhs once.
inline std::pair<Expr, Expr> differentiate_equation(const Expr& lhs, const Expr& rhs) {
  return {differentiate(lhs), differentiate(rhs)};
}

}  // namespace diffalg
