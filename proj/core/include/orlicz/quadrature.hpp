#ifndef ORLICZ_QUADRATURE_HPP
#define ORLICZ_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace orlicz {

/// Outcome of a quadrature: value, an error estimate, and whether the
/// refinement loop terminated within its budget.
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

using ScalarFn = std::function<double(double)>;

/// 15-point Gauss-Legendre rule on [a, b].
double gauss15(const ScalarFn& f, double a, double b);

/// Adaptive bisection driven by the difference between one Gauss panel and
/// its two halves. Intended for integrands smooth up to the endpoints.
QuadResult integrate_adaptive(const ScalarFn& f, double a, double b,
                              double rel_tol = 1e-12, int max_depth = 42);

/// Integral of f over (0, b] where f may blow up (integrably) at 0.
/// Geometric halving toward the origin; when segment contributions stop
/// decaying geometrically, a power-law model of the segment sequence supplies
/// the tail. converged=false signals a divergent or undecidable tail.
QuadResult integrate_to_zero(const ScalarFn& f, double b, double rel_tol = 1e-11);

/// Integral of f over [a, infinity). Geometric doubling with the same tail
/// treatment as integrate_to_zero.
QuadResult integrate_to_infinity(const ScalarFn& f, double a, double rel_tol = 1e-11);

/// Local model fit log g = c + beta*log t + kappa*log(1+|log t|), used to
/// classify endpoint behaviour of integrands of power-log type.
struct PowerLogFit {
  double beta = 0.0;   // power exponent
  double kappa = 0.0;  // log-factor exponent
  double offset = 0.0;
  double residual = 0.0;
};

/// Fits the three-parameter model on the given sample points (t_i, g(t_i)),
/// t_i > 0, g > 0. Points with non-finite log g are skipped.
PowerLogFit fit_power_log(const std::vector<double>& t, const std::vector<double>& g);

/// Convergence classification of an improper integral endpoint against the
/// critical exponent beta = -1.
enum class TailVerdict { convergent, divergent, indeterminate };

/// Classifies \int_0 g or \int^\infty g from the fitted local exponent of g on
/// a log-spaced window. `margin` is the dead zone around criticality.
TailVerdict classify_tail(const PowerLogFit& fit, bool at_zero, double margin = 0.01);

}  // namespace orlicz

#endif
