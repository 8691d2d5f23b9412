#pragma once

// Text grammar (precedence low -> high):
//   sum     := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | unary-juxtaposed)*   juxtaposition
//              multiplies when the next token is an identifier or '('
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?        right-associative; the exponent
//              must reduce to a rational constant (write '^(p/q)' for
//              fractions)
//   primary := NUMBER | '(' sum ')' | FUNC '(' sum ')' | differential | IDENT
//
// Differential shorthand: 'd' glued to one trailing letter is an order-1
// atom (dx, dy); 'd' + digits + letter or 'd^k' + letter is order k (d2x,
// d^2x, d^2(x)); multi-letter symbols need the parenthesized form d^k(name).
// A lone 'd' before '(' is the differential operator applied to a composite
// argument; that form is only legal where the caller will resolve it (the
// CLI diff command), so parse() rejects it and parse_with_pending() keeps it
// as a pending wrapper. 'd' in any other position is an ordinary symbol:
// write 'd * x' for that product, never 'dx'.
//
// dx^2 is (dx)^2, matching the notation this engine mechanizes; the
// differential of x^2 is spelled d(x^2).

#include <diffalg/expr.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace diffalg {

enum class OutputStyle { plain, latex };

namespace detail {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      }
      out.push_back({Tok::number, std::string(src.substr(start, i - start)), {start, i}});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Tok::ident, std::string(src.substr(start, i - start)), {start, i}});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", {start, start + 1});
    }
    ++i;
    out.push_back({kind, std::string(src.substr(start, 1)), {start, i}});
  }
  out.push_back({Tok::end, "", {src.size(), src.size()}});
  return out;
}

// Digit strings must be read in base 10 explicitly: the big-integer string
// constructor treats a leading 0 as an octal prefix.
inline Integer integer_from_digits(std::string digits) {
  std::size_t nonzero = digits.find_first_not_of('0');
  if (nonzero == std::string::npos) return Integer(0);
  return Integer(digits.substr(nonzero));
}

inline Rational rational_from_number(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(integer_from_digits(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  Integer den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  if (digits.empty()) return Rational(0);
  return Rational(integer_from_digits(digits), den);
}

// Shorthand atoms inside one identifier token: d<letter> or d<digits><letter>.
inline std::optional<DiffAtom> atom_shorthand(const std::string& ident, SourceSpan span) {
  if (ident.size() < 2 || ident[0] != 'd') return std::nullopt;
  std::size_t i = 1;
  while (i < ident.size() && std::isdigit(static_cast<unsigned char>(ident[i]))) ++i;
  if (i + 1 != ident.size()) return std::nullopt;
  if (!std::isalpha(static_cast<unsigned char>(ident[i]))) return std::nullopt;
  int order = 1;
  if (i > 1) {
    order = std::stoi(ident.substr(1, i - 1));
    if (order < 1) throw SyntaxError("differential order must be >= 1", span);
  }
  return DiffAtom(Symbol(std::string(1, ident[i])), order);
}

class Parser {
 public:
  Parser(std::string_view src, bool allow_pending)
      : tokens_(lex(src)), allow_pending_(allow_pending) {}

  Expr run() {
    Expr e = parse_sum();
    expect_end();
    return e;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool allow_pending_ = false;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw SyntaxError(std::string("expected ") + what, peek().span);
  }
  void expect_end() {
    if (peek().kind != Tok::end) throw SyntaxError("unexpected trailing input", peek().span);
  }

  Expr parse_sum() {
    Expr e = parse_term();
    for (;;) {
      if (accept(Tok::plus)) {
        e = Expr::raw_sum({e, parse_term()});
      } else if (accept(Tok::minus)) {
        e = Expr::raw_sum({e, Expr::raw_product({Expr::integer(-1), parse_term()})});
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    for (;;) {
      if (accept(Tok::star)) {
        e = Expr::raw_product({e, parse_unary()});
      } else if (accept(Tok::slash)) {
        e = Expr::raw_product({e, Expr::raw_pow(parse_unary(), Rational(-1))});
      } else if (peek().kind == Tok::ident || peek().kind == Tok::lparen) {
        e = Expr::raw_product({e, parse_unary()});  // juxtaposition
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (accept(Tok::minus))
      return Expr::raw_product({Expr::integer(-1), parse_unary()});
    if (accept(Tok::plus)) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept(Tok::caret)) return base;
    SourceSpan span = peek().span;
    Expr raw_exponent = parse_unary();
    Expr folded = normalize(raw_exponent);
    if (folded.kind() != ExprKind::Constant) throw NonRationalExponentError(span);
    return Expr::raw_pow(base, folded.constant_value());
  }

  Expr parse_primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::number:
        advance();
        return Expr::constant(rational_from_number(tok.text));
      case Tok::lparen: {
        advance();
        Expr e = parse_sum();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident:
        return parse_ident();
      default:
        throw SyntaxError("expected an expression", tok.span);
    }
  }

  Expr parse_ident() {
    Token tok = advance();
    const std::string& name = tok.text;

    if (name == "d") {
      if (accept(Tok::caret)) {
        // d^k x  or  d^k(name)
        const Token& num = peek();
        if (num.kind != Tok::number) throw SyntaxError("expected differential order", num.span);
        advance();
        Rational k = rational_from_number(num.text);
        if (!is_integer(k) || k < 1)
          throw SyntaxError("differential order must be a positive integer", num.span);
        int order = static_cast<int>(k.convert_to<long long>());
        return Expr::atom(parse_atom_base(), order);
      }
      if (peek().kind == Tok::lparen) {
        advance();
        Expr arg = parse_sum();
        expect(Tok::rparen, "')'");
        if (arg.kind() == ExprKind::Symbol) return Expr::atom(arg.symbol_value(), 1);
        if (!allow_pending_)
          throw SyntaxError("d(...) of a composite argument is only legal under diff",
                            {tok.span.start, peek(0).span.start});
        return Expr::raw_pending(arg);
      }
      return Expr::symbol("d");
    }

    if (auto atom = atom_shorthand(name, tok.span)) return Expr::atom(*atom);

    if (peek().kind == Tok::lparen) {
      if (!find_function(name)) throw UnknownFunctionError(name, tok.span);
      advance();
      Expr arg = parse_sum();
      expect(Tok::rparen, "')'");
      return Expr::raw_function(name, arg);
    }
    return Expr::symbol(name);
  }

  // Base of d^k...: either a glued single letter (d^2x) or (name).
  Symbol parse_atom_base() {
    const Token& tok = peek();
    if (tok.kind == Tok::ident) {
      if (tok.text.size() != 1)
        throw SyntaxError("use d^k(name) for multi-letter symbols", tok.span);
      advance();
      return Symbol(tok.text);
    }
    if (tok.kind == Tok::lparen) {
      advance();
      const Token& inner = peek();
      if (inner.kind != Tok::ident) throw SyntaxError("expected a symbol name", inner.span);
      advance();
      expect(Tok::rparen, "')'");
      return Symbol(inner.text);
    }
    throw SyntaxError("expected a symbol after differential order", tok.span);
  }
};

}  // namespace detail

/// Parses the plain-text grammar into a normalized expression.
inline Expr parse(std::string_view text) {
  return normalize(detail::Parser(text, /*allow_pending=*/false).run());
}

/// Like parse() but keeps d(composite) as pending-differential wrappers and
/// returns the raw tree; the caller must run resolve_pending() before any
/// other operation.
inline Expr parse_with_pending(std::string_view text) {
  return detail::Parser(text, /*allow_pending=*/true).run();
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------
//
// Plain layout (deterministic; parse(format(e)) == e for canonical e):
//   - sums print in canonical term order, folding negative coefficients into
//     a binary '-';
//   - a product prints coefficient first (tight against a leading symbol
//     factor, spaced otherwise), positive-power factors space-separated,
//     then one '/' with the negative-power factors (parenthesized when there
//     is more than one);
//   - exponents print bare when positive integers and parenthesized
//     otherwise: x^2, x^(-5), y^(1/3).

namespace detail {

inline std::string format_exponent_plain(const Rational& p) {
  if (is_integer(p) && p > 0) return to_string(p);
  return "(" + to_string(p) + ")";
}

// Display order inside a product: group factors by the kind of their base
// (symbols, then atoms, then the rest), so powers of a symbol print before
// the differentials they multiply: 3x^2 dx.
inline bool display_factor_less(const Expr& a, const Expr& b) {
  auto base_of = [](const Expr& f) -> const Expr& {
    return f.kind() == ExprKind::Power ? f.base() : f;
  };
  const Expr& ba = base_of(a);
  const Expr& bb = base_of(b);
  if (ba.kind() != bb.kind()) return static_cast<int>(ba.kind()) < static_cast<int>(bb.kind());
  auto c = compare(ba, bb);
  if (c != 0) return c < 0;
  return compare(a, b) < 0;
}

inline std::string format_plain(const Expr& e);

inline std::string format_atom_plain(const DiffAtom& a) {
  if (a.base.name.size() == 1) {
    if (a.order == 1) return "d" + a.base.name;
    return "d^" + std::to_string(a.order) + a.base.name;
  }
  return "d^" + std::to_string(a.order) + "(" + a.base.name + ")";
}

inline std::string format_base_plain(const Expr& b) {
  switch (b.kind()) {
    case ExprKind::Symbol:
    case ExprKind::Atom:
    case ExprKind::Function:
      return format_plain(b);
    case ExprKind::Constant: {
      const Rational& c = b.constant_value();
      if (c >= 0 && is_integer(c)) return to_string(c);
      return "(" + to_string(c) + ")";
    }
    default:
      return "(" + format_plain(b) + ")";
  }
}

// One positive-exponent display factor. Sums only reach factor position as
// flipped denominators, and need parentheses there.
inline std::string format_factor_plain(const Expr& f) {
  if (f.kind() == ExprKind::Power)
    return format_base_plain(f.base()) + "^" + format_exponent_plain(f.exponent());
  if (f.kind() == ExprKind::Sum) return "(" + format_plain(f) + ")";
  return format_plain(f);
}

inline std::string format_term_plain(const Rational& coeff, const Expr& core) {
  std::vector<Expr> numerator, denominator;
  auto place = [&](const Expr& f) {
    if (f.kind() == ExprKind::Power && f.exponent() < 0) {
      Rational flipped = -f.exponent();
      denominator.push_back(flipped == 1 ? f.base() : Expr::raw_pow(f.base(), flipped));
    } else {
      numerator.push_back(f);
    }
  };
  if (core.kind() == ExprKind::Product)
    for (const Expr& f : core.factors()) place(f);
  else if (!core.is_one())
    place(core);
  std::stable_sort(numerator.begin(), numerator.end(), display_factor_less);
  std::stable_sort(denominator.begin(), denominator.end(), display_factor_less);

  std::string out;
  bool tight = false;
  if (coeff == -1 && !numerator.empty()) {
    out = "-";
    tight = false;
  } else if (coeff != 1 || numerator.empty()) {
    out = to_string(coeff);
    const ExprKind lead =
        numerator.empty() ? ExprKind::Constant
                          : (numerator.front().kind() == ExprKind::Power
                                 ? numerator.front().base().kind()
                                 : numerator.front().kind());
    tight = lead == ExprKind::Symbol;
  }
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    if (!(i == 0 && (out.empty() || out == "-" || tight))) out += " ";
    out += format_factor_plain(numerator[i]);
  }
  // Chained division: "a/f1/f2" re-parses factor by factor. Grouping the
  // denominator as "a/(f1 f2)" would not survive a round trip, because the
  // juxtaposed product re-normalizes (sums distribute) before the division
  // is applied.
  for (const Expr& d : denominator) out += "/" + format_factor_plain(d);
  return out;
}

inline std::string format_plain(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return to_string(e.constant_value());
    case ExprKind::Symbol:
      return e.symbol_value().name;
    case ExprKind::Atom:
      return format_atom_plain(e.atom_value());
    case ExprKind::Function:
      return e.function_name() + "(" + format_plain(e.argument()) + ")";
    case ExprKind::Power:
    case ExprKind::Product: {
      auto [coeff, core] = split_coefficient(e);
      return format_term_plain(coeff, core);
    }
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const Expr& t : e.terms()) {
        auto [coeff, core] = split_coefficient(t);
        if (first) {
          out = format_term_plain(coeff, core);
          first = false;
        } else if (coeff < 0) {
          out += " - " + format_term_plain(-coeff, core);
        } else {
          out += " + " + format_term_plain(coeff, core);
        }
      }
      return out;
    }
    case ExprKind::PendingDiff:
      return "d(" + format_plain(e.argument()) + ")";
  }
  return "";  // unreachable
}

// LaTeX mirrors the plain layout but renders quotients with \frac and atoms
// with the upright-d typography.
inline std::string format_latex(const Expr& e);

inline std::string format_atom_latex(const DiffAtom& a) {
  std::string d = "\\mathrm{d}";
  if (a.order > 1) d += "^{" + std::to_string(a.order) + "}";
  if (a.base.name.size() == 1) return d + a.base.name;
  return d + "(" + a.base.name + ")";
}

inline std::string format_rational_latex(const Rational& r) {
  if (is_integer(r)) return to_string(r);
  std::string sign = r < 0 ? "-" : "";
  Rational a = r < 0 ? Rational(-r) : r;
  return sign + "\\frac{" + to_string(numerator(a)) + "}{" + to_string(denominator(a)) + "}";
}

inline std::string format_base_latex(const Expr& b) {
  switch (b.kind()) {
    case ExprKind::Symbol:
    case ExprKind::Atom:
      return format_latex(b);
    case ExprKind::Constant:
      if (b.constant_value() >= 0 && is_integer(b.constant_value()))
        return to_string(b.constant_value());
      return "\\left(" + format_rational_latex(b.constant_value()) + "\\right)";
    default:
      return "\\left(" + format_latex(b) + "\\right)";
  }
}

inline std::string format_factor_latex(const Expr& f) {
  if (f.kind() == ExprKind::Power)
    return format_base_latex(f.base()) + "^{" + to_string(f.exponent()) + "}";
  if (f.kind() == ExprKind::Sum) return "\\left(" + format_latex(f) + "\\right)";
  return format_latex(f);
}

inline std::string format_term_latex(const Rational& coeff, const Expr& core) {
  std::vector<Expr> numerator, denominator;
  auto place = [&](const Expr& f) {
    if (f.kind() == ExprKind::Power && f.exponent() < 0) {
      Rational flipped = -f.exponent();
      denominator.push_back(flipped == 1 ? f.base() : Expr::raw_pow(f.base(), flipped));
    } else {
      numerator.push_back(f);
    }
  };
  if (core.kind() == ExprKind::Product)
    for (const Expr& f : core.factors()) place(f);
  else if (!core.is_one())
    place(core);
  std::stable_sort(numerator.begin(), numerator.end(), display_factor_less);
  std::stable_sort(denominator.begin(), denominator.end(), display_factor_less);

  std::string prefix;
  Rational c = coeff;
  if (c < 0) {
    prefix = "-";
    c = -c;
  }
  std::string num;
  if (c != 1 || numerator.empty()) num = format_rational_latex(c);
  for (const Expr& f : numerator) {
    if (!num.empty()) num += "\\,";
    num += format_factor_latex(f);
  }
  if (denominator.empty()) return prefix + num;
  std::string den;
  for (const Expr& f : denominator) {
    if (!den.empty()) den += "\\,";
    den += format_factor_latex(f);
  }
  return prefix + "\\frac{" + num + "}{" + den + "}";
}

inline std::string format_latex(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return format_rational_latex(e.constant_value());
    case ExprKind::Symbol:
      return e.symbol_value().name;
    case ExprKind::Atom:
      return format_atom_latex(e.atom_value());
    case ExprKind::Function: {
      const std::string& n = e.function_name();
      std::string head = (n == "sin" || n == "cos" || n == "exp" || n == "ln")
                             ? "\\" + n
                             : "\\operatorname{" + n + "}";
      return head + "\\left(" + format_latex(e.argument()) + "\\right)";
    }
    case ExprKind::Power:
    case ExprKind::Product: {
      auto [coeff, core] = split_coefficient(e);
      return format_term_latex(coeff, core);
    }
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const Expr& t : e.terms()) {
        auto [coeff, core] = split_coefficient(t);
        if (first) {
          out = format_term_latex(coeff, core);
          first = false;
        } else if (coeff < 0) {
          out += " - " + format_term_latex(-coeff, core);
        } else {
          out += " + " + format_term_latex(coeff, core);
        }
      }
      return out;
    }
    case ExprKind::PendingDiff:
      return "\\mathrm{d}\\left(" + format_latex(e.argument()) + "\\right)";
  }
  return "";  // unreachable
}

}  // namespace detail

/// Deterministic text form; plain style re-parses to an equal expression.
inline std::string format(const Expr& e, OutputStyle style = OutputStyle::plain) {
  return style == OutputStyle::plain ? detail::format_plain(e) : detail::format_latex(e);
}

inline std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << format(e); }

}  // namespace diffalg
