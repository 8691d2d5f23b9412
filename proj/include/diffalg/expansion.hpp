#pragma once

// Derivative forms in Arbogast's operator notation: the n-th derivative of y
// with respect to x is defined by the recurrence
//
//   D¹y = dy/dx,        Dⁿy = d(Dⁿ⁻¹y) / dx,
//
// where d is the context-free differential operator and the division is
// exact DiffRational arithmetic. Every expansion here is produced by
// iterating that recurrence; no order's formula is written out by hand.
// Because d privileges no variable, the expansions stay valid under any
// later choice of independent variable; committing to one (a "progression
// of variables") is the separate, explicit act of setting its higher-order
// differentials to zero.

#include <diffalg/differential.hpp>
#include <diffalg/rational_function.hpp>

#include <string>
#include <utility>

namespace diffalg {

/// A fully expanded n-th derivative of `dependent` with respect to
/// `independent`: a quotient of polynomials in the two symbols and their
/// differential atoms.
struct DerivativeForm {
  Symbol dependent;
  Symbol independent;
  int order;
  DiffRational expansion;
};

/// Iterates the defining recurrence n times. The two symbols normally
/// differ; passing the same symbol is allowed and meaningful (the first
/// level is dx/dx = 1, so every higher level collapses to 0).
inline DerivativeForm arbogast_expand(const Symbol& dependent, const Symbol& independent,
                                      int n) {
  if (n < 1) throw DomainError("derivative order must be >= 1");
  DiffRational dx = DiffRational::from_generator(Expr::atom(independent, 1));
  DiffRational acc = DiffRational::from_generator(Expr::atom(dependent, 1)) / dx;
  for (int level = 2; level <= n; ++level)
    acc = from_expr(differentiate(to_expr(acc))) / dx;
  return {dependent, independent, n, std::move(acc)};
}

/// The choice of an independent variable: under a progression of x, the
/// second and higher differentials d²x, d³x, ... all read as zero.
struct Progression {
  Symbol independent;
};

inline Expr reduce_with_progression(const Expr& e, const Progression& p) {
  SubstitutionMap zeros;
  for (const DiffAtom& a : free_atoms(e))
    if (a.base == p.independent && a.order >= 2) zeros.emplace(Expr::atom(a), Expr::integer(0));
  if (zeros.empty()) return normalize(e);
  return substitute(e, zeros);
}

inline DiffRational reduce_with_progression(const DiffRational& r, const Progression& p) {
  auto vanishes = [&](const Expr& g) {
    return g.kind() == ExprKind::Atom && g.atom_value().base == p.independent &&
           g.atom_value().order >= 2;
  };
  DiffPolynomial den = r.den().filtered(vanishes);
  if (den.is_zero()) throw DivisionByZeroPolynomial();
  return DiffRational(r.num().filtered(vanishes), std::move(den));
}

inline DerivativeForm reduce_with_progression(const DerivativeForm& f, const Progression& p) {
  return {f.dependent, f.independent, f.order,
          reduce_with_progression(f.expansion, p)};
}

/// Undoes a second-order progression reduction: every occurrence of the
/// ratio d²y/dx² (with y = dependent, x = independent) is replaced by the
/// full second-derivative expansion, which reduces back to the input under
/// the progression of x. Implemented as the substitution
/// d²y -> (expansion of D²y)·dx², exact whenever d²y occurs only in that
/// ratio pattern (the caller's obligation).
inline Expr reinflate_second(const Expr& e, const Symbol& dependent,
                             const Symbol& independent) {
  Expr d2dep = Expr::atom(dependent, 2);
  std::set<DiffAtom> atoms = free_atoms(e);
  if (!atoms.contains(DiffAtom(dependent, 2)))
    throw PatternNotFound("no d^2" + dependent.name + "/d" + independent.name +
                          "^2 ratio to reinflate");
  Expr expansion = to_expr(arbogast_expand(dependent, independent, 2).expansion);
  Expr dx2 = Expr::pow(Expr::atom(independent, 1), 2);
  SubstitutionMap map;
  map.emplace(d2dep, expansion * dx2);
  return substitute(e, map);
}

/// Second-derivative inversion: swapping the roles of dependent and
/// independent variable transforms D²y (w.r.t. x) into
///   D²x (w.r.t. y) = -D²y · (D¹y)⁻³.
inline DiffRational invert_second_derivative(const DiffRational& d2, const DiffRational& d1) {
  if (d1.is_zero()) throw DivisionByZeroPolynomial();
  return -(d2 * d1.pow(-3));
}

/// d/dvar of an expression whose only indeterminate is `var`: one
/// structural differential gives f'(var)·dvar exactly, and the dvar
/// divides out. Throws DomainError if other symbols (or atoms) are present.
inline Expr ordinary_derivative(const Expr& f, const Symbol& var) {
  DiffRational r = from_expr(differentiate(normalize(f))) /
                   DiffRational::from_generator(Expr::atom(var, 1));
  Expr out = to_expr(r);
  if (!free_atoms(out).empty())
    throw DomainError("expression is not a function of '" + var.name + "' alone");
  return out;
}

/// Everything verify_second_chain_rule establishes for one pair of curves
/// y(x) and x(t). The three values are polynomials in t; the identity flag
/// is input-independent (it is checked over free atoms).
struct ChainRuleReport {
  Expr naive;         ///< (D²y w.r.t. x at x(t)) · (dx/dt)² — the fraction-square guess
  Expr direct;        ///< D²(y∘x) w.r.t. t, by substituting first
  Expr faa_di_bruno;  ///< y''(x(t))·x'(t)² + y'(x(t))·x''(t)
  bool naive_matches_direct;
  bool faa_matches_direct;
  /// The progression-free identity behind the chain rule: expanding every
  /// derivative form into differential atoms, D²y(t) = D²y(x)·(dx/dt)² +
  /// D¹y(x)·D²x(t) holds exactly in the free atoms dy, dx, dt, d²y, d²x,
  /// d²t — no variable is assumed independent.
  bool full_identity_holds;
};

inline ChainRuleReport verify_second_chain_rule(const Expr& y_of_x, const Expr& x_of_t) {
  Symbol x("x"), t("t");
  if (!free_atoms(y_of_x).empty() || !free_atoms(x_of_t).empty())
    throw DomainError("chain-rule inputs must not contain differential atoms");
  for (const Symbol& s : free_symbols(y_of_x))
    if (!(s == x)) throw DomainError("the outer curve must be a function of 'x' alone");
  for (const Symbol& s : free_symbols(x_of_t))
    if (!(s == t)) throw DomainError("the inner curve must be a function of 't' alone");

  SubstitutionMap at_x_of_t;
  at_x_of_t.emplace(Expr::symbol(x), x_of_t);

  Expr yp = ordinary_derivative(y_of_x, x);
  Expr ypp = ordinary_derivative(yp, x);
  Expr xp = ordinary_derivative(x_of_t, t);
  Expr xpp = ordinary_derivative(xp, t);

  Expr naive = substitute(ypp, at_x_of_t) * Expr::pow(xp, 2);
  Expr faa = naive + substitute(yp, at_x_of_t) * xpp;
  Expr composite = substitute(y_of_x, at_x_of_t);
  Expr direct = ordinary_derivative(ordinary_derivative(composite, t), t);

  // The atom-level identity, independent of the particular curves.
  Symbol y("y");
  DiffRational lhs = arbogast_expand(y, t, 2).expansion;
  DiffRational dy_dx = DiffRational::from_generator(Expr::atom(y, 1)) /
                       DiffRational::from_generator(Expr::atom(x, 1));
  DiffRational dx_dt = DiffRational::from_generator(Expr::atom(x, 1)) /
                       DiffRational::from_generator(Expr::atom(t, 1));
  DiffRational rhs =
      arbogast_expand(y, x, 2).expansion * dx_dt.pow(2) + dy_dx * arbogast_expand(x, t, 2).expansion;

  return {naive,
          direct,
          faa,
          equals(naive, direct),
          equals(faa, direct),
          lhs == rhs};
}

/// The two related facts about d²x/dx²: the expanded second derivative of x
/// with respect to itself is identically zero, yet the bare monomial ratio
/// d²x/dx² is not the zero quotient — it reduces only under an explicit
/// progression.
struct DxdxReport {
  DiffRational full_form;   ///< arbogast_expand(x, x, 2)
  DiffRational bare_ratio;  ///< d²x / dx²
  bool full_form_is_zero;
  bool bare_ratio_is_nonzero;
  bool passed() const { return full_form_is_zero && bare_ratio_is_nonzero; }
};

inline DxdxReport verify_dxdx_subtlety() {
  Symbol x("x");
  DiffRational full = arbogast_expand(x, x, 2).expansion;
  DiffRational bare = DiffRational::from_generator(Expr::atom(x, 2)) /
                      DiffRational::from_generator(Expr::atom(x, 1)).pow(2);
  return {full, bare, full.is_zero(), !bare.is_zero()};
}

}  // namespace diffalg
