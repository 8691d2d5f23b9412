#pragma once

// Quotients of DiffPolynomial with exact arithmetic. reduce() cancels the
// common monomial part, tries mutual exact division (so (x^2-1)/(x-1)
// collapses to x+1), and scales the denominator to be primitive with a
// positive leading coefficient. That normal form is canonical for the
// quotients this engine produces; equality is nevertheless decided by
// cross-multiplication, which is complete for arbitrary representatives.

#include <diffalg/polynomial.hpp>

namespace diffalg {

class DiffRational {
 public:
  DiffRational() : num_(DiffPolynomial::zero()), den_(DiffPolynomial::one()) {}

  DiffRational(DiffPolynomial num, DiffPolynomial den)
      : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  explicit DiffRational(DiffPolynomial num) : num_(std::move(num)), den_(DiffPolynomial::one()) {}

  static DiffRational constant(const Rational& c) {
    return DiffRational(DiffPolynomial::constant(c));
  }

  static DiffRational from_generator(const Expr& g) {
    return DiffRational(DiffPolynomial::from_generator(g));
  }

  const DiffPolynomial& num() const { return num_; }
  const DiffPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend DiffRational operator+(const DiffRational& a, const DiffRational& b) {
    return DiffRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend DiffRational operator-(const DiffRational& a) {
    DiffRational out = a;
    out.num_ = -out.num_;
    return out;
  }
  friend DiffRational operator-(const DiffRational& a, const DiffRational& b) {
    return DiffRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend DiffRational operator*(const DiffRational& a, const DiffRational& b) {
    return DiffRational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend DiffRational operator/(const DiffRational& a, const DiffRational& b) {
    if (b.num_.is_zero()) throw DivisionByZeroPolynomial();
    return DiffRational(a.num_ * b.den_, a.den_ * b.num_);
  }

  DiffRational pow(long n) const {
    if (n >= 0) {
      return DiffRational(num_.pow(static_cast<unsigned>(n)),
                          den_.pow(static_cast<unsigned>(n)));
    }
    if (num_.is_zero()) throw DivisionByZeroPolynomial();
    return DiffRational(den_.pow(static_cast<unsigned>(-n)),
                        num_.pow(static_cast<unsigned>(-n)));
  }

  /// Complete equality test: cross-multiplies, so it does not depend on the
  /// representatives being fully cancelled.
  friend bool operator==(const DiffRational& a, const DiffRational& b) {
    if (a.num_ == b.num_ && a.den_ == b.den_) return true;
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }

  Expr to_expr() const {
    Expr n = num_.to_expr();
    if (den_.is_one()) return n;
    return n / den_.to_expr();
  }

 private:
  DiffPolynomial num_;
  DiffPolynomial den_;

  void reduce() {
    if (den_.is_zero()) throw DivisionByZeroPolynomial();
    if (num_.is_zero()) {
      den_ = DiffPolynomial::one();
      return;
    }
    Monomial shared = gcd(num_.common_monomial(), den_.common_monomial());
    if (!shared.is_one()) {
      num_ = num_.divided_by_monomial(shared);
      den_ = den_.divided_by_monomial(shared);
    }
    if (!den_.is_one()) {
      if (auto q = try_divide(num_, den_)) {
        num_ = std::move(*q);
        den_ = DiffPolynomial::one();
      } else if (auto inv = try_divide(den_, num_)) {
        den_ = std::move(*inv);
        num_ = DiffPolynomial::one();
      }
    }
    // Make the denominator primitive with a positive leading coefficient;
    // the numerator absorbs the scale.
    Rational scale = den_.content();
    if (den_.leading_term().second < 0) scale = -scale;
    if (scale != 1) {
      num_ = num_.scaled(1 / scale);
      den_ = den_.scaled(1 / scale);
    }
  }
};

/// Converts a normalized expression into a polynomial quotient. Symbols,
/// atoms, function applications, and fractional powers become opaque
/// generators; integer powers and quotients are expanded exactly, so
/// (x^2 - 1)/(x - 1) arrives as the pair (x + 1, 1).
inline DiffRational from_expr(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return DiffRational::constant(e.constant_value());
    case ExprKind::Symbol:
    case ExprKind::Atom:
    case ExprKind::Function:
      return DiffRational::from_generator(e);
    case ExprKind::Power: {
      const Rational& p = e.exponent();
      if (is_integer(p)) {
        long n = static_cast<long>(p.convert_to<long long>());
        return from_expr(e.base()).pow(n);
      }
      return DiffRational::from_generator(e);  // fractional power stays opaque
    }
    case ExprKind::Product: {
      DiffRational out = DiffRational::constant(1);
      for (const Expr& f : e.factors()) out = out * from_expr(f);
      return out;
    }
    case ExprKind::Sum: {
      DiffRational out;
      for (const Expr& t : e.terms()) out = out + from_expr(t);
      return out;
    }
    case ExprKind::PendingDiff:
      throw DomainError("cannot convert an unresolved pending differential");
  }
  throw DomainError("unreachable expression kind");
}

/// Expression form of a quotient, normalized.
inline Expr to_expr(const DiffRational& r) { return normalize(r.to_expr()); }

}  // namespace diffalg
