#ifndef ORLICZ_YOUNG_HPP
#define ORLICZ_YOUNG_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/quadrature.hpp"

namespace orlicz {

/// Thrown when an operation is asked to run on a Young function outside its
/// numeric domain (infinite values, vanishing density, ...).
struct unsupported_function_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Regime { global, near_zero, near_infinity };

std::string to_string(Regime r);

/// Power-logarithmic model family: growth t^p0 (log 1/t)^alpha0 near zero and
/// t^p (log t)^alpha near infinity, spliced at t = 1.
struct PowerLogParams {
  double p = 2.0;
  double alpha = 0.0;
  double p0 = 2.0;
  double alpha0 = 0.0;
};

struct ComparisonVerdict {
  Regime regime = Regime::global;
  bool dominates = false;
  std::optional<double> constant;   // smallest passing C
  std::optional<double> threshold;  // regime window edge
  int samples = 0;
};

struct IndexEstimate {
  double value = 0.0;
  Regime regime = Regime::global;
  std::vector<double> lambdas;
  double residual = 0.0;
};

/// Ratio traces backing a growth-comparison decision.
struct GrowthEvidence {
  bool result = false;
  std::vector<double> lambdas;
  std::vector<double> t_grid;
  std::vector<std::vector<double>> ratios;  // one trace per lambda
};

/// A convex function A(t) = int_0^t a, with a non-decreasing left-continuous
/// density a. Immutable after construction; cheap to copy.
class YoungFunction {
 public:
  enum class Form { power_log, tabulated, analytic };

  YoungFunction() = default;

  /// t^p, exact closed forms throughout.
  static YoungFunction power(double p);

  /// Spliced power-log family. Requires p0 > 1, or p0 = 1 and alpha0 <= 0;
  /// p > 1, or p = 1 and alpha >= 0.
  static YoungFunction power_log(const PowerLogParams& params);
  static YoungFunction power_log(double p, double alpha, double p0, double alpha0);

  /// Density given by knots [(t, a(t))]: piecewise linear, vertical jumps as
  /// repeated abscissae, a = +inf supported for the final segment.
  static YoungFunction tabulated(std::vector<std::pair<double, double>> knots);

  /// Density as a callable; A is accumulated by quadrature behind anchors.
  static YoungFunction from_density(ScalarFn density, std::string name);

  /// Closed-form pair (A, a).
  static YoungFunction analytic(ScalarFn eval, ScalarFn density, std::string name);

  /// exp(t^gamma) - 1, gamma >= 1.
  static YoungFunction exp_power(double gamma);

  /// exp(exp(t^gamma)) - e, gamma >= 1.
  static YoungFunction exp_exp_power(double gamma);

  bool valid() const { return impl_ != nullptr; }

  /// A(t); throws std::domain_error for t < 0, returns +inf past an infinite
  /// jump of the density.
  double operator()(double t) const;

  /// Left-continuous density a(t).
  double density(double t) const;

  /// Generalized inverse sup{ t : A(t) <= y }.
  double inverse(double y) const;

  bool finite_everywhere() const;
  bool density_positive() const;  // a > 0 on (0, inf)

  Form form() const;
  const std::string& name() const;
  const PowerLogParams* power_log_params() const;  // null unless power_log

  std::string to_json() const;
  static YoungFunction from_json(const std::string& text);

 private:
  struct Impl;
  explicit YoungFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Left-continuous inverse of the density of A (left endpoint on flats, jump
/// abscissa on jumps); +inf when sigma exceeds the density's range.
double density_inverse(const YoungFunction& A, double sigma);

/// Young conjugate, via the density inverse.
YoungFunction conjugate(const YoungFunction& A);

/// Growth index against powers: slope of log sup_t A(lambda t)/A(t) in
/// log lambda; the near-infinity variant extrapolates the ratio over large t.
IndexEstimate matuszewska_index(const YoungFunction& A, Regime regime);

/// Does A dominate B in the regime, i.e. B(t) <= A(Ct) on the window?
ComparisonVerdict dominates(const YoungFunction& A, const YoungFunction& B,
                            Regime regime);

/// Finite-horizon test of B(lambda t)/A(t) -> 0 for every lambda.
GrowthEvidence grows_essentially_slower(const YoungFunction& B, const YoungFunction& A,
                                        double eps_decision = 1e-3,
                                        double t_max = 1e8);

}  // namespace orlicz

#endif
