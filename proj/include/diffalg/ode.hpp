#pragma once

// The worked second-order ODE:  y'' = f(y) · (y')³.
//
// Swapping dependent and independent variable via the second-derivative
// inversion turns it into x''(y) = -f(y) — the cube of y' cancels exactly
// — so two integrations give the implicit solution
//
//   x = X(y) + c1·y + c2,   X = -∬ f dy dy.
//
// solve_by_swap performs that derivation mechanically (the cancellation is
// checked, not assumed) and verify_numeric confronts the result with a
// Runge-Kutta integration of the original equation. The sign of X matters:
// the +X branch is fitted and measured too, and fails by orders of
// magnitude, which is the point of reporting both.

#include <diffalg/expansion.hpp>
#include <diffalg/univariate.hpp>

#include <cmath>
#include <optional>
#include <utility>

namespace diffalg {

/// x = X(y) + c1·y + c2 with X the fixed particular part and c1, c2 the
/// integration constants determined later from initial data.
struct ImplicitSolution {
  UnivariatePoly X;
};

/// Derives the implicit solution of y'' = f(y)·(y')³ by the variable swap.
/// The step x''(y) = -f(y) is produced by applying the inversion formula to
/// the symbolic right side and verifying that (dy/dx)³ cancels; the double
/// integration is exact.
inline ImplicitSolution solve_by_swap(const UnivariatePoly& f) {
  Symbol y(f.var());
  Expr f_expr = f.to_expr();

  DiffRational d1 = DiffRational::from_generator(Expr::atom(y, 1)) /
                    DiffRational::from_generator(Expr::atom(Symbol("x"), 1));
  DiffRational d2 = from_expr(f_expr) * d1.pow(3);
  DiffRational swapped = invert_second_derivative(d2, d1);
  if (!(swapped == from_expr(normalize(-f_expr))))
    throw DomainError("variable swap failed to cancel the slope cube");

  UnivariatePoly X = -integrate_poly(integrate_poly(f));
  if (!(X.derivative().derivative() == -f))
    throw DomainError("double integration check failed");
  return {std::move(X)};
}

/// Fits c1, c2 from initial data via dx/dy = X'(y) + c1 = 1/y'.
inline std::pair<double, double> fit_constants(const ImplicitSolution& sol, double y0,
                                               double yprime0, double x0) {
  if (yprime0 == 0.0) throw ZeroInitialSlope();
  double c1 = 1.0 / yprime0 - sol.X.derivative().eval(y0);
  double c2 = x0 - sol.X.eval(y0) - c1 * y0;
  return {c1, c2};
}

struct OdeReport {
  UnivariatePoly f = UnivariatePoly::zero("y");
  double y0 = 0.0, yprime0 = 0.0, x0 = 0.0;
  double span = 0.0, step = 0.0;
  double c1 = 0.0, c2 = 0.0;            ///< derived (-X) branch constants
  double c1_plus = 0.0, c2_plus = 0.0;  ///< opposite (+X) branch constants
  double max_residual_minus = 0.0;
  double max_residual_plus = 0.0;
  double x_reached = 0.0;
  /// Slope magnitude beyond which the march stops: past it a fixed-step
  /// explicit integrator no longer tracks the solution, so residuals would
  /// measure integrator noise rather than the implicit relation.
  double slope_limit = 0.0;
  bool truncated = false;                ///< stopped at slope_limit
  std::optional<double> blowup_x;        ///< state exceeded 1e6 or lost finiteness
  bool derived_branch_ok(double tolerance) const { return max_residual_minus <= tolerance; }
};

/// Integrates y'' = f(y)·(y')³ by classical fourth-order Runge-Kutta from
/// (y0, y'0) at x0, and reports the maximum deviation of the trajectory
/// from x = ±X(y) + c1·y + c2 for both sign branches (constants fitted per
/// branch from the same initial data). The equation can reach a vertical
/// slope at finite x; the march then stops early — at slope_limit, or at
/// the 1e6 state bound — and the report says where. BlowupDetected is
/// thrown only when not even the first step is representable.
inline OdeReport verify_numeric(const UnivariatePoly& f, double y0, double yprime0, double x0,
                                double span, double step, double slope_limit = 10.0) {
  if (step <= 0.0) throw DomainError("step must be positive");
  if (!(span > 0.0) || !std::isfinite(span)) throw DomainError("span must be positive and finite");

  ImplicitSolution minus = solve_by_swap(f);
  ImplicitSolution plus{-minus.X};
  auto [c1m, c2m] = fit_constants(minus, y0, yprime0, x0);
  auto [c1p, c2p] = fit_constants(plus, y0, yprime0, x0);

  OdeReport report;
  report.f = f;
  report.y0 = y0;
  report.yprime0 = yprime0;
  report.x0 = x0;
  report.span = span;
  report.step = step;
  report.c1 = c1m;
  report.c2 = c2m;
  report.c1_plus = c1p;
  report.c2_plus = c2p;
  report.slope_limit = slope_limit;

  const long n = std::max(1L, std::lround(span / step));
  const double h = span / static_cast<double>(n);

  auto accel = [&f](double y, double v) { return f.eval(y) * v * v * v; };

  double x = x0, y = y0, v = yprime0;
  long accepted = 0;
  for (long i = 0; i < n; ++i) {
    if (std::abs(v) > slope_limit) {
      report.truncated = true;
      break;
    }
    double k1y = v, k1v = accel(y, v);
    double k2y = v + 0.5 * h * k1v, k2v = accel(y + 0.5 * h * k1y, v + 0.5 * h * k1v);
    double k3y = v + 0.5 * h * k2v, k3v = accel(y + 0.5 * h * k2y, v + 0.5 * h * k2v);
    double k4y = v + h * k3v, k4v = accel(y + h * k3y, v + h * k3v);
    double y_next = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    double v_next = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(y_next) || !std::isfinite(v_next) || std::abs(y_next) > 1e6 ||
        std::abs(v_next) > 1e6) {
      report.blowup_x = x + h;
      break;
    }
    x += h;
    y = y_next;
    v = v_next;
    ++accepted;
    report.max_residual_minus =
        std::max(report.max_residual_minus, std::abs(x - (minus.X.eval(y) + c1m * y + c2m)));
    report.max_residual_plus =
        std::max(report.max_residual_plus, std::abs(x - (plus.X.eval(y) + c1p * y + c2p)));
  }
  if (accepted == 0 && report.blowup_x) throw BlowupDetected(*report.blowup_x);
  report.x_reached = x;
  return report;
}

}  // namespace diffalg
