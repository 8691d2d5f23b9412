#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffalg {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mathematically invalid construction (0^-1, surviving pending differential, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Byte range into the parser input; start <= end.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, SourceSpan span)
      : Error(what + " (at " + std::to_string(span.start) + ".." +
              std::to_string(span.end) + ")"),
        span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

class UnknownFunctionError : public SyntaxError {
 public:
  UnknownFunctionError(const std::string& name, SourceSpan span)
      : SyntaxError("unknown function '" + name + "'", span) {}
};

class NonRationalExponentError : public SyntaxError {
 public:
  explicit NonRationalExponentError(SourceSpan span)
      : SyntaxError("exponent does not reduce to a rational constant", span) {}
};

class DivisionByZeroPolynomial : public Error {
 public:
  DivisionByZeroPolynomial() : Error("division by the zero polynomial") {}
};

class PatternNotFound : public Error {
 public:
  explicit PatternNotFound(const std::string& what) : Error(what) {}
};

class DenominatorVanishes : public Error {
 public:
  explicit DenominatorVanishes(double t0)
      : Error("denominator vanishes at t0 = " + std::to_string(t0)) {}
};

class UnboundSymbol : public Error {
 public:
  explicit UnboundSymbol(const std::string& name)
      : Error("symbol '" + name + "' has no parametrization binding") {}
};

class StationaryParametrization : public Error {
 public:
  explicit StationaryParametrization(double t0)
      : Error("x'(t) = 0 at t0 = " + std::to_string(t0)) {}
};

class InconclusiveSampling : public Error {
 public:
  InconclusiveSampling() : Error("all resampled parametrizations hit singularities") {}
};

class ZeroInitialSlope : public Error {
 public:
  ZeroInitialSlope() : Error("y'(x0) = 0: constants are not determined") {}
};

class BlowupDetected : public Error {
 public:
  explicit BlowupDetected(double x)
      : Error("trajectory blew up near x = " + std::to_string(x)) {}
};

}  // namespace diffalg
