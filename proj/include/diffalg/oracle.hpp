#pragma once

// Numeric ground truth for symbolic identities. A Parametrization binds
// every symbol to a polynomial curve in a parameter t; along that curve a
// differential atom has the concrete value
//
//   d^k s  |->  s^(k)(t0) · dt_value^k,
//
// i.e. t acts as the progression variable (its own higher differentials
// vanish) and dt_value is the constant first differential of t. Expressions
// are then evaluated as plain floating arithmetic over those leaf values.
// The independent n-th-derivative oracle never touches the symbolic
// expansions: it forms g1 = y'(t)/x'(t) and iterates g_{k+1} = g_k'(t)/x'(t)
// with truncated-Taylor jets, so agreement between the two routes genuinely
// cross-checks the algebra.

#include <diffalg/expansion.hpp>
#include <diffalg/jet.hpp>
#include <diffalg/parser.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace diffalg {

struct Parametrization {
  std::map<Symbol, UnivariatePoly> bindings;
  double t0 = 0.0;
  double dt_value = 1.0;

  std::string describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [sym, poly] : bindings) {
      if (!first) os << ", ";
      first = false;
      os << sym.name << " = " << format(poly.to_expr());
    }
    os << "; t0 = " << t0;
    if (dt_value != 1.0) os << ", dt = " << dt_value;
    return os.str();
  }
};

namespace detail {

inline const UnivariatePoly& binding_for(const Parametrization& p, const Symbol& s) {
  auto it = p.bindings.find(s);
  if (it == p.bindings.end()) throw UnboundSymbol(s.name);
  return it->second;
}

inline double eval_scalar(const Expr& e, const Parametrization& p) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return to_double(e.constant_value());
    case ExprKind::Symbol:
      return binding_for(p, e.symbol_value()).eval(p.t0);
    case ExprKind::Atom: {
      const DiffAtom& a = e.atom_value();
      UnivariatePoly d = binding_for(p, a.base);
      for (int k = 0; k < a.order; ++k) d = d.derivative();
      return d.eval(p.t0) * std::pow(p.dt_value, a.order);
    }
    case ExprKind::Sum: {
      double s = 0.0;
      for (const Expr& t : e.terms()) s += eval_scalar(t, p);
      return s;
    }
    case ExprKind::Product: {
      double s = 1.0;
      for (const Expr& f : e.factors()) s *= eval_scalar(f, p);
      return s;
    }
    case ExprKind::Power: {
      double base = eval_scalar(e.base(), p);
      const Rational& q = e.exponent();
      if (q < 0 && std::abs(base) < 1e-250) throw DenominatorVanishes(p.t0);
      if (!is_integer(q) && base < 0.0)
        throw DomainError("fractional power of a negative value");
      return std::pow(base, to_double(q));
    }
    case ExprKind::Function: {
      const FunctionDef* def = find_function(e.function_name());
      if (!def) throw DomainError("no numeric rule for function '" + e.function_name() + "'");
      double u = eval_scalar(e.argument(), p);
      if (e.function_name() == "ln" && u <= 0.0)
        throw DomainError("logarithm of a non-positive value");
      return def->value(u);
    }
    case ExprKind::PendingDiff:
      throw DomainError("cannot evaluate an unresolved pending differential");
  }
  throw DomainError("unreachable expression kind");
}

inline double eval_polynomial_value(const DiffPolynomial& poly, const Parametrization& p) {
  return eval_scalar(poly.to_expr(), p);
}

}  // namespace detail

/// Value of a differential expression along the curve; throws
/// DenominatorVanishes when a division hits zero and UnboundSymbol when the
/// parametrization misses a symbol.
inline double eval_diff_expr(const Expr& e, const Parametrization& p) {
  return detail::eval_scalar(normalize(e), p);
}

inline double eval_diff_expr(const DiffRational& r, const Parametrization& p) {
  double den = detail::eval_polynomial_value(r.den(), p);
  if (den == 0.0 || std::abs(den) < 1e-250) throw DenominatorVanishes(p.t0);
  return detail::eval_polynomial_value(r.num(), p) / den;
}

/// n-th derivative of y with respect to x along the curves y(t), x(t) at
/// t0, computed purely numerically: jets of the two polynomials, then the
/// quotient-derivative recurrence. Throws StationaryParametrization when
/// x'(t0) is (numerically) zero.
inline double quotient_derivative_oracle(const UnivariatePoly& y_param,
                                         const UnivariatePoly& x_param, int n, double t0) {
  if (n < 1) throw DomainError("derivative order must be >= 1");
  const int k = 2 * n + 2;
  Jet xp = Jet::of_polynomial(x_param, t0, k).derivative_jet();
  if (std::abs(xp.value()) < 1e-12) throw StationaryParametrization(t0);
  Jet g = Jet::of_polynomial(y_param, t0, k).derivative_jet() / xp;
  for (int level = 2; level <= n; ++level) {
    g = g.derivative_jet();
    g = g / xp.truncated(g.order());
  }
  return g.value();
}

/// Same derivative by nested central differences — far less accurate than
/// the jet route (use a loose tolerance such as 1e-4), kept as an
/// independent second opinion with no shared machinery.
inline double finite_difference_quotient_derivative(const UnivariatePoly& y_param,
                                                    const UnivariatePoly& x_param, int n,
                                                    double t0, double h = 1e-4) {
  struct Recurse {
    const UnivariatePoly& y;
    const UnivariatePoly& x;
    double h;
    double g(int level, double t) const {
      if (level == 1) {
        double dx = x.derivative().eval(t);
        if (dx == 0.0) throw StationaryParametrization(t);
        return y.derivative().eval(t) / dx;
      }
      double dx = x.derivative().eval(t);
      if (dx == 0.0) throw StationaryParametrization(t);
      return (g(level - 1, t + h) - g(level - 1, t - h)) / (2.0 * h) / dx;
    }
  };
  return Recurse{y_param, x_param, h}.g(n, t0);
}

// ---------------------------------------------------------------------------
// Randomized identity checking
// ---------------------------------------------------------------------------

struct IdentityCounterexample {
  std::string parametrization;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

struct IdentityReport {
  std::string identity;
  int trials = 0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  std::optional<IdentityCounterexample> counterexample;
  bool passed() const { return !counterexample.has_value(); }
};

inline double relative_error(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-12});
  return std::abs(a - b) / scale;
}

namespace detail {

/// Degree 1..5, integer coefficients in [-3, 3].
inline UnivariatePoly random_curve(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg_dist(1, 5);
  std::uniform_int_distribution<int> coeff_dist(-3, 3);
  int deg = deg_dist(rng);
  std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1);
  for (Rational& c : coeffs) c = coeff_dist(rng);
  return UnivariatePoly("t", std::move(coeffs));
}

inline double random_t0(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
}

constexpr int kMaxResamples = 50;

}  // namespace detail

/// Compares two differential expressions on `trials` random parametrizations
/// (seeded, hence reproducible). Singular draws — vanishing denominators or
/// stationary curves — are resampled up to 50 times before the trial counts;
/// a trial that cannot be sampled at all raises InconclusiveSampling.
inline IdentityReport check_identity(const Expr& lhs, const Expr& rhs, int trials,
                                     std::uint64_t seed, double tolerance = 1e-9) {
  if (trials < 1) throw DomainError("trial count must be >= 1");
  Expr l = normalize(lhs);
  Expr r = normalize(rhs);

  std::set<Symbol> symbols = free_symbols(l);
  for (const Symbol& s : free_symbols(r)) symbols.insert(s);
  for (const DiffAtom& a : free_atoms(l)) symbols.insert(a.base);
  for (const DiffAtom& a : free_atoms(r)) symbols.insert(a.base);

  IdentityReport report;
  report.identity = format(l) + "  ==  " + format(r);
  report.trials = trials;
  report.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < detail::kMaxResamples && !done; ++attempt) {
      Parametrization p;
      for (const Symbol& s : symbols) p.bindings.emplace(s, detail::random_curve(rng));
      p.t0 = detail::random_t0(rng);
      try {
        double lv = eval_diff_expr(l, p);
        double rv = eval_diff_expr(r, p);
        double err = relative_error(lv, rv);
        report.max_rel_err = std::max(report.max_rel_err, err);
        if (err > tolerance && !report.counterexample)
          report.counterexample = IdentityCounterexample{p.describe(), lv, rv, err};
        done = true;
      } catch (const DenominatorVanishes&) {
      } catch (const StationaryParametrization&) {
      }
    }
    if (!done) throw InconclusiveSampling();
  }
  return report;
}

inline IdentityReport check_identity(const DiffRational& lhs, const DiffRational& rhs,
                                     int trials, std::uint64_t seed, double tolerance = 1e-9) {
  return check_identity(to_expr(lhs), to_expr(rhs), trials, seed, tolerance);
}

/// Cross-checks the expanded n-th derivative form against the
/// quotient-derivative oracle on random curves with x'(t0) bounded away
/// from zero. This is the strongest evidence the expansions mean what they
/// claim: the two sides share no code path.
inline IdentityReport check_expansion_against_oracle(int n, int trials, std::uint64_t seed,
                                                     double tolerance = 1e-9) {
  if (n < 1) throw DomainError("derivative order must be >= 1");
  if (trials < 1) throw DomainError("trial count must be >= 1");
  Symbol y("y"), x("x");
  DerivativeForm form = arbogast_expand(y, x, n);

  IdentityReport report;
  report.identity = "expanded derivative order " + std::to_string(n) + "  ==  jet oracle";
  report.trials = trials;
  report.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < detail::kMaxResamples && !done; ++attempt) {
      UnivariatePoly xc = detail::random_curve(rng);
      UnivariatePoly yc = detail::random_curve(rng);
      double t0 = detail::random_t0(rng);
      if (std::abs(xc.derivative().eval(t0)) < 0.1) continue;  // stationary; resample
      Parametrization p;
      p.bindings.emplace(x, xc);
      p.bindings.emplace(y, yc);
      p.t0 = t0;
      try {
        double symbolic = eval_diff_expr(form.expansion, p);
        double oracle = quotient_derivative_oracle(yc, xc, n, t0);
        double err = relative_error(symbolic, oracle);
        report.max_rel_err = std::max(report.max_rel_err, err);
        if (err > tolerance && !report.counterexample)
          report.counterexample = IdentityCounterexample{p.describe(), symbolic, oracle, err};
        done = true;
      } catch (const DenominatorVanishes&) {
      } catch (const StationaryParametrization&) {
      }
    }
    if (!done) throw InconclusiveSampling();
  }
  return report;
}

}  // namespace diffalg
