#ifndef ORLICZ_TARGETS_HPP
#define ORLICZ_TARGETS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/monotone.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// The domain function fails the integral admissibility conditions.
struct admissibility_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A tail estimate exceeded its accuracy budget.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FractionalParams {
  int n = 1;
  double s = 0.5;

  double ratio() const { return double(n) / s; }
  int integer_part() const { return int(s); }
  double fractional_part() const { return s - double(integer_part()); }

  void validate() const {
    if (n < 1 || !(s > 0.0) || !(s < double(n)))
      throw std::invalid_argument("FractionalParams: need 0 < s < n");
  }
};

/// Numerical verdicts for the admissibility integrals of the domain function:
/// divergence of int^inf (t/A(t))^{s/(n-s)} dt and convergence of the same
/// integrand at zero, plus the conjugate-side form of the zero condition.
struct IntegralConditions {
  bool infinity_condition = false;
  bool zero_condition = false;
  bool dual_zero_condition = false;
  bool indeterminate = false;
  PowerLogFit fit_zero;
  PowerLogFit fit_infinity;
  std::string diagnostics;
};

IntegralConditions check_integral_conditions(const YoungFunction& A,
                                             const FractionalParams& fp);

/// H(t) = ( int_0^t (tau/A(tau))^{s/(n-s)} dtau )^{(n-s)/n}, strictly
/// increasing with H(0) = 0; the inverse is bisection-backed.
MonotoneMap build_H(const YoungFunction& A, const FractionalParams& fp);

/// The optimal Orlicz target function t -> A(H^{-1}(t)).
YoungFunction build_sobolev_conjugate(const YoungFunction& A, const FractionalParams& fp);
YoungFunction build_sobolev_conjugate(const YoungFunction& A, const FractionalParams& fp,
                                      const MonotoneMap& H);

struct HatBuildInfo {
  double tail_bound = 0.0;  // largest relative tail estimate accepted
  int samples = 0;
};

/// The Young function generating the optimal rearrangement-invariant target:
/// its density inverse is a nested improper integral over the density of A.
YoungFunction build_hat(const YoungFunction& A, const FractionalParams& fp,
                        HatBuildInfo* info = nullptr);

/// Everything the verifiers need about one admissible domain function.
struct TargetSet {
  YoungFunction A;
  FractionalParams fp;
  MonotoneMap H;
  YoungFunction sobolev_conjugate;
  YoungFunction hat;
};

TargetSet build_targets(const YoungFunction& A, const FractionalParams& fp);

/// Outcome of the compact-embedding test for a candidate target B.
struct CompactnessVerdict {
  bool compact = false;
  bool indeterminate = false;
  bool growth_route = false;
  bool growth_route_conclusive = false;
  bool inverse_route = false;
  bool inverse_route_conclusive = false;
  GrowthEvidence growth_trace;
  std::vector<double> inverse_t;
  std::vector<double> inverse_ratio;  // H(A^{-1}(t)) / B^{-1}(t)
};

/// Does B grow essentially more slowly near infinity than the optimal Orlicz
/// target built from A? Runs the growth-ratio route and the inverse-ratio
/// route and reports disagreement instead of resolving it.
CompactnessVerdict compact_target_test(const YoungFunction& A, const YoungFunction& B,
                                       const FractionalParams& fp);
CompactnessVerdict compact_target_test(const TargetSet& ts, const YoungFunction& B);

}  // namespace orlicz

#endif
