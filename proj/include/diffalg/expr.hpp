#pragma once

#include <diffalg/errors.hpp>
#include <diffalg/rational.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace diffalg {

/// A named indeterminate. Identity and ordering are by name.
struct Symbol {
  std::string name;

  explicit Symbol(std::string n) : name(std::move(n)) {
    if (name.empty()) throw DomainError("symbol name must be nonempty");
  }
  auto operator<=>(const Symbol&) const = default;
};

/// The k-th differential of a base symbol: dx, d^2x, ... Always order >= 1;
/// the order-0 "differential" is the symbol itself and has no atom form.
/// Atoms are opaque algebraic units: nothing below differentiate() may peel
/// them apart, and only differentiate() raises the order.
struct DiffAtom {
  Symbol base;
  int order;

  DiffAtom(Symbol b, int k) : base(std::move(b)), order(k) {
    if (order < 1) throw DomainError("differential atom order must be >= 1");
  }
  auto operator<=>(const DiffAtom&) const = default;
};

class Expr;
struct ExprNode;

/// Node kinds in canonical-order rank: constants < symbols < atoms <
/// composites (function < power < product < sum). PendingDiff is a
/// parser-side wrapper that must be eliminated before normalization.
enum class ExprKind {
  Constant,
  Symbol,
  Atom,
  Function,
  Power,
  Product,
  Sum,
  PendingDiff,
};

std::strong_ordering compare(const Expr& a, const Expr& b);

/// Strict structural total order, usable as a map/set comparator.
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const;
};

/// Immutable symbolic expression over rationals, symbols, differential
/// atoms, sums, products, rational powers and the registered elementary
/// functions. Shared structurally; cheap to copy and safe to use across
/// threads.
class Expr {
 public:
  /// Zero.
  Expr();

  ExprKind kind() const;

  // Leaf factories.
  static Expr constant(Rational value);
  static Expr integer(long long value) { return constant(Rational(value)); }
  static Expr symbol(std::string name) { return symbol(Symbol(std::move(name))); }
  static Expr symbol(Symbol s);
  static Expr atom(DiffAtom a);
  static Expr atom(Symbol base, int order) { return atom(DiffAtom(std::move(base), order)); }
  static Expr atom(std::string base, int order) { return atom(Symbol(std::move(base)), order); }

  // Raw composite builders. No canonicalization happens here; callers that
  // need the canonical form go through normalize() (the public factories
  // below do).
  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_product(std::vector<Expr> factors);
  static Expr raw_pow(Expr base, Rational exponent);
  static Expr raw_function(std::string name, Expr argument);
  static Expr raw_pending(Expr argument);

  // Canonicalizing factories.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(Expr base, Rational exponent);
  static Expr function(std::string name, Expr argument);

  // Accessors; each requires the matching kind.
  const Rational& constant_value() const;
  const Symbol& symbol_value() const;
  const DiffAtom& atom_value() const;
  const std::vector<Expr>& terms() const;     // Sum
  const std::vector<Expr>& factors() const;   // Product
  const Expr& base() const;                   // Power
  const Rational& exponent() const;           // Power
  const std::string& function_name() const;   // Function
  const Expr& argument() const;               // Function or PendingDiff

  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Structural identity (not mathematical equality; see equals()).
  friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b) { return compare(a, b); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
  friend std::strong_ordering compare(const Expr&, const Expr&);
  friend const ExprNode& node_of(const Expr&);
};

struct ConstantNode { Rational value; };
struct SymbolNode { Symbol sym; };
struct AtomNode { DiffAtom atom; };
struct FunctionNode { std::string name; Expr arg; };
struct PowerNode { Expr base; Rational exponent; };
struct ProductNode { std::vector<Expr> factors; };
struct SumNode { std::vector<Expr> terms; };
struct PendingDiffNode { Expr arg; };

struct ExprNode {
  std::variant<ConstantNode, SymbolNode, AtomNode, FunctionNode, PowerNode,
               ProductNode, SumNode, PendingDiffNode>
      v;
};

inline const ExprNode& node_of(const Expr& e) { return *e.node_; }

inline Expr::Expr() : node_(std::make_shared<const ExprNode>(ExprNode{ConstantNode{Rational(0)}})) {}

inline ExprKind Expr::kind() const {
  return static_cast<ExprKind>(node_->v.index());
}

inline Expr Expr::constant(Rational value) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{std::move(value)}}));
}
inline Expr Expr::symbol(Symbol s) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{SymbolNode{std::move(s)}}));
}
inline Expr Expr::atom(DiffAtom a) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{AtomNode{std::move(a)}}));
}
inline Expr Expr::raw_sum(std::vector<Expr> terms) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{SumNode{std::move(terms)}}));
}
inline Expr Expr::raw_product(std::vector<Expr> factors) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ProductNode{std::move(factors)}}));
}
inline Expr Expr::raw_pow(Expr base, Rational exponent) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{PowerNode{std::move(base), std::move(exponent)}}));
}
inline Expr Expr::raw_function(std::string name, Expr argument) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{FunctionNode{std::move(name), std::move(argument)}}));
}
inline Expr Expr::raw_pending(Expr argument) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{PendingDiffNode{std::move(argument)}}));
}

inline const Rational& Expr::constant_value() const {
  return std::get<ConstantNode>(node_->v).value;
}
inline const Symbol& Expr::symbol_value() const { return std::get<SymbolNode>(node_->v).sym; }
inline const DiffAtom& Expr::atom_value() const { return std::get<AtomNode>(node_->v).atom; }
inline const std::vector<Expr>& Expr::terms() const { return std::get<SumNode>(node_->v).terms; }
inline const std::vector<Expr>& Expr::factors() const {
  return std::get<ProductNode>(node_->v).factors;
}
inline const Expr& Expr::base() const { return std::get<PowerNode>(node_->v).base; }
inline const Rational& Expr::exponent() const { return std::get<PowerNode>(node_->v).exponent; }
inline const std::string& Expr::function_name() const {
  return std::get<FunctionNode>(node_->v).name;
}
inline const Expr& Expr::argument() const {
  if (kind() == ExprKind::Function) return std::get<FunctionNode>(node_->v).arg;
  return std::get<PendingDiffNode>(node_->v).arg;
}

inline bool Expr::is_zero() const { return is_constant() && constant_value() == 0; }
inline bool Expr::is_one() const { return is_constant() && constant_value() == 1; }

// ---------------------------------------------------------------------------
// Total structural order
// ---------------------------------------------------------------------------

namespace detail {

inline std::strong_ordering compare_vec(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace detail

inline std::strong_ordering compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind()); c != 0) return c;
  switch (a.kind()) {
    case ExprKind::Constant:
      return compare(a.constant_value(), b.constant_value());
    case ExprKind::Symbol:
      return a.symbol_value() <=> b.symbol_value();
    case ExprKind::Atom:
      return a.atom_value() <=> b.atom_value();
    case ExprKind::Function:
      if (auto c = a.function_name() <=> b.function_name(); c != 0) return c;
      return compare(a.argument(), b.argument());
    case ExprKind::Power:
      if (auto c = compare(a.base(), b.base()); c != 0) return c;
      return compare(a.exponent(), b.exponent());
    case ExprKind::Product:
      return detail::compare_vec(a.factors(), b.factors());
    case ExprKind::Sum:
      return detail::compare_vec(a.terms(), b.terms());
    case ExprKind::PendingDiff:
      return compare(a.argument(), b.argument());
  }
  return std::strong_ordering::equal;  // unreachable
}

inline bool ExprLess::operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Function registry
// ---------------------------------------------------------------------------

Expr normalize(const Expr& e);

/// One registered elementary function. chain_factor(u) is d f(u) / du as an
/// expression in u, so that d(f(u)) = chain_factor(u) * d(u).
struct FunctionDef {
  std::string name;
  Expr (*chain_factor)(const Expr& u);
  double (*value)(double);
};

const std::vector<FunctionDef>& function_registry();

inline const FunctionDef* find_function(std::string_view name) {
  for (const auto& def : function_registry())
    if (def.name == name) return &def;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------
//
// Canonical form:
//   - Sums are flat, like terms merged, terms ordered by their
//     coefficient-stripped core under compare(); no zero terms.
//   - Products are flat, distributed over any Sum factor, exponents of equal
//     bases added, at most one leading rational coefficient, remaining
//     factors sorted under compare().
//   - Power exponents are never 0 or 1; power-of-power collapses by exponent
//     multiplication; powers distribute over products; positive integer
//     powers of sums expand. These rules are formal (no branch-cut analysis),
//     matching how the engine treats every expression as formally smooth.
//   - Rational constants fold exactly under +, *, and integer powers.
//     Fractional powers of constants stay symbolic (they are generally
//     irrational, and this layer keeps exact arithmetic only).
// The result is an expanded multivariate normal form: two expressions equal
// by ring axioms over symbols/atoms (without dividing by a sum) normalize
// identically. Quotients by sums remain opaque Power(sum, negative) factors;
// their cancellation lives in the rational-function layer.

namespace detail {

constexpr long long kMaxExponentMagnitude = 1'000'000;
constexpr long long kMaxSumExpansionPower = 4096;

inline long long exponent_as_ll(const Rational& p) {
  Integer n = numerator(p);
  if (n > kMaxExponentMagnitude || n < -kMaxExponentMagnitude)
    throw DomainError("exponent magnitude too large");
  return n.convert_to<long long>();
}

Expr norm_pow(const Expr& base, const Rational& exponent);
Expr norm_product(std::vector<Expr> factors);
Expr norm_sum(std::vector<Expr> terms);

// term -> (coefficient, coefficient-free core). The core of a pure constant
// is 1.
inline std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.kind() == ExprKind::Constant)
    return {term.constant_value(), Expr::constant(Rational(1))};
  if (term.kind() == ExprKind::Product) {
    const auto& fs = term.factors();
    if (!fs.empty() && fs.front().kind() == ExprKind::Constant) {
      std::vector<Expr> rest(fs.begin() + 1, fs.end());
      if (rest.size() == 1) return {fs.front().constant_value(), rest.front()};
      return {fs.front().constant_value(), Expr::raw_product(std::move(rest))};
    }
  }
  return {Rational(1), term};
}

// (coefficient, core) -> canonical term. core must be canonical and
// coefficient-free.
inline Expr join_coefficient(const Rational& coeff, const Expr& core) {
  if (core.is_one()) return Expr::constant(coeff);
  if (coeff == 1) return core;
  std::vector<Expr> fs;
  fs.push_back(Expr::constant(coeff));
  if (core.kind() == ExprKind::Product)
    fs.insert(fs.end(), core.factors().begin(), core.factors().end());
  else
    fs.push_back(core);
  return Expr::raw_product(std::move(fs));
}

inline Expr norm_sum(std::vector<Expr> terms) {
  // Flatten, then merge like terms keyed by their core.
  std::map<Expr, Rational, ExprLess> acc;
  std::vector<Expr> queue = std::move(terms);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Expr t = queue[i];
    if (t.kind() == ExprKind::Sum) {
      queue.insert(queue.end(), t.terms().begin(), t.terms().end());
      continue;
    }
    auto [c, core] = split_coefficient(t);
    acc[core] += c;
  }
  std::vector<Expr> out;
  out.reserve(acc.size());
  for (const auto& [core, c] : acc)
    if (c != 0) out.push_back(join_coefficient(c, core));
  if (out.empty()) return Expr::constant(Rational(0));
  if (out.size() == 1) return out.front();
  return Expr::raw_sum(std::move(out));
}

inline Expr norm_product(std::vector<Expr> factors) {
  // Merge exponents of equal bases, fold constants, then distribute over any
  // sum factor that remains. Runs to a fixpoint because exponent merging can
  // re-create products (power over product) or constants (x^2 * x^-2).
  std::vector<Expr> work = std::move(factors);
  for (;;) {
    Rational coeff(1);
    std::map<Expr, Rational, ExprLess> powers;
    for (std::size_t i = 0; i < work.size(); ++i) {
      const Expr f = work[i];
      switch (f.kind()) {
        case ExprKind::Constant:
          coeff *= f.constant_value();
          break;
        case ExprKind::Product:
          work.insert(work.end(), f.factors().begin(), f.factors().end());
          break;
        case ExprKind::Power:
          powers[f.base()] += f.exponent();
          break;
        default:
          powers[f] += 1;
      }
    }
    if (coeff == 0) return Expr::constant(Rational(0));

    std::vector<Expr> rebuilt;
    bool needs_remerge = false;
    for (const auto& [b, q] : powers) {
      if (q == 0) continue;
      Expr f = norm_pow(b, q);
      if (f.kind() == ExprKind::Constant || f.kind() == ExprKind::Product) needs_remerge = true;
      rebuilt.push_back(std::move(f));
    }
    if (needs_remerge) {
      rebuilt.push_back(Expr::constant(coeff));
      work = std::move(rebuilt);
      continue;
    }

    // Distribute over sums: expand (sum)*(rest) term by term.
    auto sum_it = std::find_if(rebuilt.begin(), rebuilt.end(),
                               [](const Expr& f) { return f.kind() == ExprKind::Sum; });
    if (sum_it != rebuilt.end()) {
      std::vector<std::vector<Expr>> expanded{{}};
      for (const Expr& f : rebuilt) {
        if (f.kind() == ExprKind::Sum) {
          std::vector<std::vector<Expr>> next;
          next.reserve(expanded.size() * f.terms().size());
          for (const auto& partial : expanded)
            for (const Expr& t : f.terms()) {
              auto copy = partial;
              copy.push_back(t);
              next.push_back(std::move(copy));
            }
          expanded = std::move(next);
        } else {
          for (auto& partial : expanded) partial.push_back(f);
        }
      }
      std::vector<Expr> terms;
      terms.reserve(expanded.size());
      for (auto& fs : expanded) {
        fs.push_back(Expr::constant(coeff));
        terms.push_back(norm_product(std::move(fs)));
      }
      return norm_sum(std::move(terms));
    }

    std::sort(rebuilt.begin(), rebuilt.end(), ExprLess{});
    if (rebuilt.empty()) return Expr::constant(coeff);
    if (rebuilt.size() == 1 && coeff == 1) return rebuilt.front();
    std::vector<Expr> out;
    if (coeff != 1) out.push_back(Expr::constant(coeff));
    out.insert(out.end(), rebuilt.begin(), rebuilt.end());
    if (out.size() == 1) return out.front();
    return Expr::raw_product(std::move(out));
  }
}

inline Expr norm_pow(const Expr& base, const Rational& exponent) {
  if (exponent == 0) return Expr::constant(Rational(1));  // 0^0 -> 1 by convention
  if (exponent == 1) return base;
  switch (base.kind()) {
    case ExprKind::Constant: {
      const Rational& c = base.constant_value();
      if (c == 0) {
        if (exponent < 0) throw DomainError("zero base with negative exponent");
        return Expr::constant(Rational(0));
      }
      if (c == 1) return Expr::constant(Rational(1));
      if (is_integer(exponent))
        return Expr::constant(pow_rational(c, static_cast<long>(exponent_as_ll(exponent))));
      return Expr::raw_pow(base, exponent);  // symbolic root of a rational
    }
    case ExprKind::Power:
      return norm_pow(base.base(), base.exponent() * exponent);
    case ExprKind::Product: {
      std::vector<Expr> fs;
      fs.reserve(base.factors().size());
      for (const Expr& f : base.factors()) fs.push_back(norm_pow(f, exponent));
      return norm_product(std::move(fs));
    }
    case ExprKind::Sum: {
      if (is_integer(exponent)) {
        long long n = exponent_as_ll(exponent);
        if (n > 1) {
          if (n > kMaxSumExpansionPower) throw DomainError("sum power too large to expand");
          // Expand termwise. Folding whole copies of the sum through
          // norm_product would merge them straight back into this same
          // power and never terminate.
          std::vector<Expr> acc(base.terms().begin(), base.terms().end());
          for (long long i = 1; i < n; ++i) {
            std::vector<Expr> next;
            next.reserve(acc.size() * base.terms().size());
            for (const Expr& a : acc)
              for (const Expr& t : base.terms()) next.push_back(norm_product({a, t}));
            acc = std::move(next);
          }
          return norm_sum(std::move(acc));
        }
        // Negative: invert the expanded positive power, so every route to an
        // inverted sum lands on the same representation.
        Expr inner = norm_pow(base, Rational(-n));
        if (inner.kind() == ExprKind::Sum) return Expr::raw_pow(inner, Rational(-1));
        return norm_pow(inner, Rational(-1));
      }
      return Expr::raw_pow(base, exponent);  // fractional power of a sum: opaque
    }
    default:
      return Expr::raw_pow(base, exponent);
  }
}

}  // namespace detail

/// Unique canonical form. Idempotent; rejects trees still holding a pending
/// differential wrapper.
inline Expr normalize(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Symbol:
    case ExprKind::Atom:
      return e;
    case ExprKind::Function:
      return Expr::raw_function(e.function_name(), normalize(e.argument()));
    case ExprKind::Power:
      return detail::norm_pow(normalize(e.base()), e.exponent());
    case ExprKind::Product: {
      std::vector<Expr> fs;
      fs.reserve(e.factors().size());
      for (const Expr& f : e.factors()) fs.push_back(normalize(f));
      return detail::norm_product(std::move(fs));
    }
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      ts.reserve(e.terms().size());
      for (const Expr& t : e.terms()) ts.push_back(normalize(t));
      return detail::norm_sum(std::move(ts));
    }
    case ExprKind::PendingDiff:
      throw DomainError("pending differential survived to normalize");
  }
  return e;  // unreachable
}

inline Expr Expr::sum(std::vector<Expr> terms) { return normalize(raw_sum(std::move(terms))); }
inline Expr Expr::product(std::vector<Expr> factors) {
  return normalize(raw_product(std::move(factors)));
}
inline Expr Expr::pow(Expr base, Rational exponent) {
  return normalize(raw_pow(std::move(base), std::move(exponent)));
}
inline Expr Expr::function(std::string name, Expr argument) {
  if (!find_function(name)) throw DomainError("unknown function '" + name + "'");
  return normalize(raw_function(std::move(name), std::move(argument)));
}

/// Mathematical equality up to the canonical form (ring identities over
/// symbols and atoms; not transcendental identities).
inline bool equals(const Expr& a, const Expr& b) { return normalize(a) == normalize(b); }

// ---------------------------------------------------------------------------
// Substitution and occurrence sets
// ---------------------------------------------------------------------------

/// Keys must be Symbol or Atom expressions, pairwise distinct (enforced by
/// the map). Substitution is simultaneous: bound values are spliced in
/// untouched, never re-substituted.
using SubstitutionMap = std::map<Expr, Expr, ExprLess>;

namespace detail {

inline Expr substitute_raw(const Expr& e, const SubstitutionMap& bindings) {
  switch (e.kind()) {
    case ExprKind::Symbol:
    case ExprKind::Atom: {
      auto it = bindings.find(e);
      return it == bindings.end() ? e : it->second;
    }
    case ExprKind::Constant:
      return e;
    case ExprKind::Function:
      return Expr::raw_function(e.function_name(), substitute_raw(e.argument(), bindings));
    case ExprKind::Power:
      return Expr::raw_pow(substitute_raw(e.base(), bindings), e.exponent());
    case ExprKind::Product: {
      std::vector<Expr> fs;
      fs.reserve(e.factors().size());
      for (const Expr& f : e.factors()) fs.push_back(substitute_raw(f, bindings));
      return Expr::raw_product(std::move(fs));
    }
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      ts.reserve(e.terms().size());
      for (const Expr& t : e.terms()) ts.push_back(substitute_raw(t, bindings));
      return Expr::raw_sum(std::move(ts));
    }
    case ExprKind::PendingDiff:
      return Expr::raw_pending(substitute_raw(e.argument(), bindings));
  }
  return e;  // unreachable
}

}  // namespace detail

inline Expr substitute(const Expr& e, const SubstitutionMap& bindings) {
  for (const auto& [key, value] : bindings)
    if (key.kind() != ExprKind::Symbol && key.kind() != ExprKind::Atom)
      throw DomainError("substitution keys must be symbols or differential atoms");
  return normalize(detail::substitute_raw(e, bindings));
}

inline void collect_atoms(const Expr& e, std::set<DiffAtom>& out) {
  switch (e.kind()) {
    case ExprKind::Atom:
      out.insert(e.atom_value());
      return;
    case ExprKind::Constant:
    case ExprKind::Symbol:
      return;
    case ExprKind::Function:
    case ExprKind::PendingDiff:
      collect_atoms(e.argument(), out);
      return;
    case ExprKind::Power:
      collect_atoms(e.base(), out);
      return;
    case ExprKind::Product:
      for (const Expr& f : e.factors()) collect_atoms(f, out);
      return;
    case ExprKind::Sum:
      for (const Expr& t : e.terms()) collect_atoms(t, out);
      return;
  }
}

inline void collect_symbols(const Expr& e, std::set<Symbol>& out) {
  switch (e.kind()) {
    case ExprKind::Symbol:
      out.insert(e.symbol_value());
      return;
    case ExprKind::Constant:
    case ExprKind::Atom:
      return;
    case ExprKind::Function:
    case ExprKind::PendingDiff:
      collect_symbols(e.argument(), out);
      return;
    case ExprKind::Power:
      collect_symbols(e.base(), out);
      return;
    case ExprKind::Product:
      for (const Expr& f : e.factors()) collect_symbols(f, out);
      return;
    case ExprKind::Sum:
      for (const Expr& t : e.terms()) collect_symbols(t, out);
      return;
  }
}

/// Exact set of differential atoms occurring in e.
inline std::set<DiffAtom> free_atoms(const Expr& e) {
  std::set<DiffAtom> out;
  collect_atoms(e, out);
  return out;
}

/// Symbols occurring as plain Symbol nodes (atom bases are not included;
/// see free_atoms for those).
inline std::set<Symbol> free_symbols(const Expr& e) {
  std::set<Symbol> out;
  collect_symbols(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Operator sugar (always canonical results)
// ---------------------------------------------------------------------------

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
inline Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum({a, Expr::product({Expr::integer(-1), b})});
}
inline Expr operator-(const Expr& a) { return Expr::product({Expr::integer(-1), a}); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) {
  return Expr::product({a, Expr::pow(b, Rational(-1))});
}
inline Expr pow(const Expr& base, const Rational& exponent) { return Expr::pow(base, exponent); }
inline Expr pow(const Expr& base, long long exponent) {
  return Expr::pow(base, Rational(exponent));
}
inline Expr sin(const Expr& u) { return Expr::function("sin", u); }
inline Expr cos(const Expr& u) { return Expr::function("cos", u); }
inline Expr exp(const Expr& u) { return Expr::function("exp", u); }
inline Expr ln(const Expr& u) { return Expr::function("ln", u); }

inline const std::vector<FunctionDef>& function_registry() {
  static const std::vector<FunctionDef> defs = {
      {"sin", [](const Expr& u) { return cos(u); }, [](double x) { return std::sin(x); }},
      {"cos", [](const Expr& u) { return -sin(u); }, [](double x) { return std::cos(x); }},
      {"exp", [](const Expr& u) { return exp(u); }, [](double x) { return std::exp(x); }},
      {"ln", [](const Expr& u) { return pow(u, -1); }, [](double x) { return std::log(x); }},
  };
  return defs;
}

}  // namespace diffalg
