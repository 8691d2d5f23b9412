#pragma once

// Dense univariate polynomials over exact rationals, used for curve
// parametrizations (numeric checking) and for the right side of the
// second-order ODE demo. Trailing zero coefficients are never stored.

#include <diffalg/expr.hpp>

#include <string>
#include <utility>
#include <vector>

namespace diffalg {

class UnivariatePoly {
 public:
  explicit UnivariatePoly(std::string var, std::vector<Rational> coeffs = {})
      : var_(std::move(var)), coeffs_(std::move(coeffs)) {
    if (var_.empty()) throw DomainError("polynomial variable name must be nonempty");
    strip();
  }

  static UnivariatePoly zero(std::string var) { return UnivariatePoly(std::move(var)); }
  static UnivariatePoly constant(std::string var, Rational c) {
    return UnivariatePoly(std::move(var), {std::move(c)});
  }
  static UnivariatePoly variable(std::string var) {
    return UnivariatePoly(std::move(var), {Rational(0), Rational(1)});
  }

  const std::string& var() const { return var_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
    a.check_var(b);
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return UnivariatePoly(a.var_, std::move(out));
  }
  friend UnivariatePoly operator-(const UnivariatePoly& a) { return a.scaled(Rational(-1)); }
  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a + (-b);
  }
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
    a.check_var(b);
    if (a.is_zero() || b.is_zero()) return zero(a.var_);
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UnivariatePoly(a.var_, std::move(out));
  }

  UnivariatePoly scaled(const Rational& c) const {
    if (c == 0) return zero(var_);
    std::vector<Rational> out = coeffs_;
    for (Rational& x : out) x *= c;
    return UnivariatePoly(var_, std::move(out));
  }

  UnivariatePoly pow(unsigned n) const {
    UnivariatePoly acc = constant(var_, 1);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
  }

  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

  UnivariatePoly derivative() const {
    if (coeffs_.size() <= 1) return zero(var_);
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      out[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return UnivariatePoly(var_, std::move(out));
  }

  /// Exact antiderivative with zero constant term.
  UnivariatePoly antiderivative() const {
    if (is_zero()) return zero(var_);
    std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      out[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
    return UnivariatePoly(var_, std::move(out));
  }

  Rational eval_exact(const Rational& t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  double eval(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
  }

  Expr to_expr() const {
    std::vector<Expr> terms;
    Expr v = Expr::symbol(var_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (coeffs_[k] != 0)
        terms.push_back(Expr::product(
            {Expr::constant(coeffs_[k]), Expr::pow(v, static_cast<long long>(k))}));
    return Expr::sum(terms);
  }

  /// Converts a normalized expression that is polynomial in `var` (constants,
  /// var, sums, products, nonnegative integer powers); anything else —
  /// other symbols, atoms, functions — is rejected.
  static UnivariatePoly from_expr(const Expr& e, const std::string& var) {
    switch (e.kind()) {
      case ExprKind::Constant:
        return constant(var, e.constant_value());
      case ExprKind::Symbol:
        if (e.symbol_value().name != var)
          throw DomainError("expected a polynomial in '" + var + "', found symbol '" +
                            e.symbol_value().name + "'");
        return variable(var);
      case ExprKind::Sum: {
        UnivariatePoly acc = zero(var);
        for (const Expr& t : e.terms()) acc = acc + from_expr(t, var);
        return acc;
      }
      case ExprKind::Product: {
        UnivariatePoly acc = constant(var, 1);
        for (const Expr& f : e.factors()) acc = acc * from_expr(f, var);
        return acc;
      }
      case ExprKind::Power: {
        const Rational& p = e.exponent();
        if (!is_integer(p) || p < 0)
          throw DomainError("expected a polynomial in '" + var +
                            "', found a non-polynomial power");
        return from_expr(e.base(), var).pow(static_cast<unsigned>(p.convert_to<long long>()));
      }
      default:
        throw DomainError("expected a polynomial in '" + var + "'");
    }
  }

 private:
  std::string var_;
  std::vector<Rational> coeffs_;

  void strip() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  void check_var(const UnivariatePoly& other) const {
    if (var_ != other.var_)
      throw DomainError("polynomial variable mismatch: '" + var_ + "' vs '" + other.var_ + "'");
  }
};

/// Antiderivative with zero constant (one integration step of the ODE demo).
inline UnivariatePoly integrate_poly(const UnivariatePoly& p) { return p.antiderivative(); }

}  // namespace diffalg
