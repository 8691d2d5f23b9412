#pragma once

// Sparse multivariate polynomials over exact rationals. Generators are
// expression leaves treated as independent indeterminates: symbols,
// differential atoms, function applications, and fractional powers. A
// monomial maps each generator to a positive integer exponent; a polynomial
// maps monomials to nonzero rational coefficients.
//
// Monomials are ordered lexicographically over the generator order, with
// absent generators reading as exponent zero. The order is total and
// multiplicative (m1 < m2 implies m1*m < m2*m), which is what the exact
// division loop in try_divide relies on for termination.

#include <diffalg/expr.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace diffalg {

class Monomial {
 public:
  using ExpMap = std::map<Expr, long, ExprLess>;

  Monomial() = default;

  static Monomial one() { return Monomial(); }

  static Monomial generator(const Expr& g, long exp = 1) {
    if (exp < 1) throw DomainError("monomial exponents must be positive");
    Monomial m;
    m.exps_.emplace(g, exp);
    return m;
  }

  const ExpMap& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  long degree() const {
    long d = 0;
    for (const auto& [g, e] : exps_) d += e;
    return d;
  }

  long exponent_of(const Expr& g) const {
    auto it = exps_.find(g);
    return it == exps_.end() ? 0 : it->second;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (const auto& [g, e] : b.exps_) {
      long& slot = out.exps_[g];
      slot += e;
    }
    return out;
  }

  bool divides(const Monomial& other) const {
    for (const auto& [g, e] : exps_)
      if (other.exponent_of(g) < e) return false;
    return true;
  }

  /// other / *this; caller must check divides() first.
  Monomial divide_into(const Monomial& other) const {
    Monomial out;
    for (const auto& [g, e] : other.exps_) {
      long rest = e - exponent_of(g);
      if (rest < 0) throw DomainError("monomial division with negative remainder");
      if (rest > 0) out.exps_.emplace(g, rest);
    }
    return out;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial out;
    for (const auto& [g, e] : a.exps_) {
      long m = std::min(e, b.exponent_of(g));
      if (m > 0) out.exps_.emplace(g, m);
    }
    return out;
  }

  // Lexicographic with missing exponents read as zero; the earliest
  // differing generator decides, larger exponent first.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    auto ia = a.exps_.begin();
    auto ib = b.exps_.begin();
    while (ia != a.exps_.end() || ib != b.exps_.end()) {
      if (ia == a.exps_.end()) return std::strong_ordering::less;
      if (ib == b.exps_.end()) return std::strong_ordering::greater;
      auto cg = compare(ia->first, ib->first);
      if (cg < 0) return std::strong_ordering::greater;  // a has the earlier generator
      if (cg > 0) return std::strong_ordering::less;
      if (ia->second != ib->second)
        return ia->second > ib->second ? std::strong_ordering::greater
                                       : std::strong_ordering::less;
      ++ia;
      ++ib;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return (a <=> b) == 0; }

  Expr to_expr() const {
    std::vector<Expr> factors;
    factors.reserve(exps_.size());
    for (const auto& [g, e] : exps_) factors.push_back(Expr::pow(g, static_cast<long long>(e)));
    return Expr::product(factors);
  }

 private:
  ExpMap exps_;
};

class DiffPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  DiffPolynomial() = default;

  static DiffPolynomial zero() { return DiffPolynomial(); }

  static DiffPolynomial constant(const Rational& c) {
    DiffPolynomial p;
    if (c != 0) p.terms_.emplace(Monomial::one(), c);
    return p;
  }

  static DiffPolynomial one() { return constant(1); }

  static DiffPolynomial from_generator(const Expr& g, long exp = 1) {
    DiffPolynomial p;
    p.terms_.emplace(Monomial::generator(g, exp), Rational(1));
    return p;
  }

  static DiffPolynomial from_term(const Monomial& m, const Rational& c) {
    DiffPolynomial p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
  }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  std::size_t term_count() const { return terms_.size(); }

  /// Largest monomial under the lexicographic order, with its coefficient.
  std::pair<Monomial, Rational> leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend DiffPolynomial operator-(const DiffPolynomial& a) {
    DiffPolynomial out = a;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }

  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  DiffPolynomial scaled(const Rational& c) const {
    if (c == 0) return zero();
    DiffPolynomial out = *this;
    for (auto& [m, coeff] : out.terms_) coeff *= c;
    return out;
  }

  DiffPolynomial pow(unsigned n) const {
    DiffPolynomial acc = one();
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
  }

  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Positive gcd of all coefficient magnitudes; 0 for the zero polynomial.
  Rational content() const {
    Rational g = 0;
    for (const auto& [m, c] : terms_) g = gcd_rational(g, c);
    return g;
  }

  /// Monomial dividing every term (the common part pulled out by reduce()).
  Monomial common_monomial() const {
    if (terms_.empty()) return Monomial::one();
    auto it = terms_.begin();
    Monomial g = it->first;
    for (++it; it != terms_.end(); ++it) {
      g = gcd(g, it->first);
      if (g.is_one()) break;
    }
    return g;
  }

  DiffPolynomial divided_by_monomial(const Monomial& m) const {
    DiffPolynomial out;
    for (const auto& [mono, c] : terms_) {
      if (!m.divides(mono)) throw DomainError("monomial does not divide every term");
      out.terms_.emplace(m.divide_into(mono), c);
    }
    return out;
  }

  /// Keeps only the terms whose monomials contain no generator matching the
  /// predicate (used to drop vanishing differentials of an independent
  /// variable).
  template <typename Pred>
  DiffPolynomial filtered(Pred&& drop_generator) const {
    DiffPolynomial out;
    for (const auto& [mono, c] : terms_) {
      bool drop = false;
      for (const auto& [g, e] : mono.exponents())
        if (drop_generator(g)) {
          drop = true;
          break;
        }
      if (!drop) out.terms_.emplace(mono, c);
    }
    return out;
  }

  Expr to_expr() const {
    std::vector<Expr> parts;
    parts.reserve(terms_.size());
    for (const auto& [m, c] : terms_)
      parts.push_back(Expr::product({Expr::constant(c), m.to_expr()}));
    return Expr::sum(parts);
  }

 private:
  TermMap terms_;
};

/// Exact multivariate division: returns a / b when the remainder is zero,
/// std::nullopt otherwise. Throws DivisionByZeroPolynomial when b is zero.
inline std::optional<DiffPolynomial> try_divide(const DiffPolynomial& a,
                                                const DiffPolynomial& b) {
  if (b.is_zero()) throw DivisionByZeroPolynomial();
  DiffPolynomial quotient;
  DiffPolynomial remainder = a;
  const auto [lead_m, lead_c] = b.leading_term();
  while (!remainder.is_zero()) {
    const auto [rm, rc] = remainder.leading_term();
    if (!lead_m.divides(rm)) return std::nullopt;
    Monomial qm = lead_m.divide_into(rm);
    Rational qc = rc / lead_c;
    DiffPolynomial step = DiffPolynomial::from_term(qm, qc);
    quotient = quotient + step;
    remainder = remainder - step * b;
  }
  return quotient;
}

}  // namespace diffalg
