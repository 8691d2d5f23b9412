#pragma once

// Truncated Taylor jets: a Jet stores the coefficients f(t0), f'(t0)/1!,
// ..., f^(K)(t0)/K! of a quantity along a curve parameter. Arithmetic is
// exact through order K (the only rounding is ordinary double rounding), so
// jets of degree-K-accurate data give derivative values with no
// finite-difference cancellation loss. Operations on jets of different
// truncation orders are rejected; use truncated() to align them.

#include <diffalg/errors.hpp>
#include <diffalg/univariate.hpp>

#include <cmath>
#include <vector>

namespace diffalg {

class Jet {
 public:
  explicit Jet(int order) : c_(static_cast<std::size_t>(check_order(order)) + 1, 0.0) {}

  static Jet constant(int order, double v) {
    Jet j(order);
    j.c_[0] = v;
    return j;
  }

  /// The identity curve t at t0: value v, slope 1.
  static Jet variable(int order, double v) {
    Jet j(order);
    j.c_[0] = v;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  /// Taylor coefficients of a polynomial at t0 (exact derivative, double
  /// evaluation).
  static Jet of_polynomial(const UnivariatePoly& p, double t0, int order) {
    Jet j(order);
    UnivariatePoly d = p;
    double factorial = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) {
        d = d.derivative();
        factorial *= k;
      }
      j.c_[static_cast<std::size_t>(k)] = d.eval(t0) / factorial;
      if (d.is_zero()) break;
    }
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }

  /// k-th derivative value (coefficient times k!).
  double derivative_value(int k) const {
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return coeff(k) * factorial;
  }

  Jet truncated(int new_order) const {
    if (new_order > order()) throw DomainError("cannot truncate a jet upward");
    Jet j(new_order);
    for (int k = 0; k <= new_order; ++k) j.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
    return j;
  }

  /// d/dt as a jet one order shorter.
  Jet derivative_jet() const {
    if (order() < 1) throw DomainError("cannot differentiate an order-0 jet");
    Jet j(order() - 1);
    for (int k = 1; k <= order(); ++k)
      j.c_[static_cast<std::size_t>(k - 1)] = c_[static_cast<std::size_t>(k)] * k;
    return j;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    a.check_same_order(b);
    Jet j = a;
    for (std::size_t k = 0; k < j.c_.size(); ++k) j.c_[k] += b.c_[k];
    return j;
  }
  friend Jet operator-(const Jet& a) {
    Jet j = a;
    for (double& x : j.c_) x = -x;
    return j;
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_same_order(b);
    Jet j(a.order());
    for (std::size_t k = 0; k < j.c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      j.c_[k] = s;
    }
    return j;
  }

  Jet scaled(double s) const {
    Jet j = *this;
    for (double& x : j.c_) x *= s;
    return j;
  }

  /// 1/u; requires a nonzero value part.
  Jet reciprocal() const {
    if (c_[0] == 0.0) throw DomainError("reciprocal of a jet with zero value part");
    Jet w(order());
    w.c_[0] = 1.0 / c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += c_[j] * w.c_[k - j];
      w.c_[k] = -s / c_[0];
    }
    return w;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  Jet pow_int(long n) const {
    if (n < 0) return reciprocal().pow_int(-n);
    Jet acc = constant(order(), 1.0);
    Jet base = *this;
    unsigned long m = static_cast<unsigned long>(n);
    while (m > 0) {
      if (m & 1UL) acc = acc * base;
      base = base * base;
      m >>= 1UL;
    }
    return acc;
  }

  /// u^alpha for real alpha via u w' = alpha u' w; needs u(t0) > 0 unless
  /// alpha is an integer (then pow_int applies).
  Jet pow_real(double alpha) const {
    if (c_[0] <= 0.0) throw DomainError("fractional jet power needs a positive value part");
    Jet w(order());
    w.c_[0] = std::pow(c_[0], alpha);
    for (std::size_t k = 1; k < c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j)
        s += (alpha * j - static_cast<double>(k - j)) * c_[j] * w.c_[k - j];
      w.c_[k] = s / (static_cast<double>(k) * c_[0]);
    }
    return w;
  }

  friend Jet exp(const Jet& u) {
    Jet w(u.order());
    w.c_[0] = std::exp(u.c_[0]);
    for (std::size_t k = 1; k < u.c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += j * u.c_[j] * w.c_[k - j];
      w.c_[k] = s / static_cast<double>(k);
    }
    return w;
  }

  friend Jet log(const Jet& u) {
    if (u.c_[0] <= 0.0) throw DomainError("jet logarithm needs a positive value part");
    Jet w(u.order());
    w.c_[0] = std::log(u.c_[0]);
    for (std::size_t k = 1; k < u.c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j < k; ++j) s += u.c_[j] * static_cast<double>(k - j) * w.c_[k - j];
      w.c_[k] = (static_cast<double>(k) * u.c_[k] - s) / (static_cast<double>(k) * u.c_[0]);
    }
    return w;
  }

  friend std::pair<Jet, Jet> sin_cos(const Jet& u) {
    Jet s(u.order()), c(u.order());
    s.c_[0] = std::sin(u.c_[0]);
    c.c_[0] = std::cos(u.c_[0]);
    for (std::size_t k = 1; k < u.c_.size(); ++k) {
      double as = 0.0, ac = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        as += j * u.c_[j] * c.c_[k - j];
        ac += j * u.c_[j] * s.c_[k - j];
      }
      s.c_[k] = as / static_cast<double>(k);
      c.c_[k] = -ac / static_cast<double>(k);
    }
    return {s, c};
  }

  friend Jet sin(const Jet& u) { return sin_cos(u).first; }
  friend Jet cos(const Jet& u) { return sin_cos(u).second; }

 private:
  std::vector<double> c_;

  static int check_order(int order) {
    if (order < 0) throw DomainError("jet order must be >= 0");
    return order;
  }
  void check_same_order(const Jet& other) const {
    if (c_.size() != other.c_.size())
      throw DomainError("jet truncation orders differ; truncate explicitly");
  }
};

}  // namespace diffalg
