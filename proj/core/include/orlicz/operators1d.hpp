#ifndef ORLICZ_OPERATORS1D_HPP
#define ORLICZ_OPERATORS1D_HPP

#include <string>

#include "orlicz/norms.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/targets.hpp"

namespace orlicz {

struct HardyReport {
  enum class Kind { modular_down, modular_up, orlicz_target_norm, ri_target_norm };
  Kind kind = Kind::modular_down;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;  // used (exact-constant forms) or found (searched)
  bool pass = false;
  double error_budget = 0.0;
  std::string note;
};

/// T f(r) = int_r^L rho^{-1+s/n} f(rho) drho, exact per cell; sampled at the
/// cell centers of the input grid.
GridFunction hardy_Ts(const GridFunction& f, const FractionalParams& fp);

/// Exact-constant downward inequality:
/// int_0^L A(r^{-s} int_0^r f) dr/r <= int_0^L A(s^{-1} r^{1-s} f(r)) dr/r.
HardyReport verify_hardy_down(const YoungFunction& A, double s, const GridFunction& f);

/// Upward inequality with a searched constant C:
/// int_0^L hatA(r^{-s} int_r^L f) r^{n-1} dr <= int_0^L A(C r^{1-s} f) r^{n-1} dr.
HardyReport verify_hardy_up(const TargetSet& ts, const GridFunction& f,
                            double c_cap = 1e3);

/// ||T f||_{L^{A_{n/s}}(0,L)} <= C ||f||_{L^A(0,L)}: reports the ratio.
HardyReport verify_thmA(const TargetSet& ts, const GridFunction& f, double c_cap = 1e3);

/// ||T f||_{L(hatA, n/s)(0,L)} <= C ||f||_{L^A(0,L)}; also records the
/// constant in ||.||_{L^{A_{n/s}}} <= kappa ||.||_{L(hatA, n/s)} on the data.
HardyReport verify_thmB(const TargetSet& ts, const GridFunction& f, double c_cap = 1e3,
                        double* embedding_constant = nullptr);

/// Radial test function u(x) = (1/m!) int_{w}^{inf} f(r) r^{-m-1+s/n} (r-w)^m dr,
/// w = omega_n |x|^n, for f >= 0 non-increasing with bounded support.
/// Sampled on a symmetric interval (n=1) or square (n=2) covering the support.
GridFunction make_test_function(const GridFunction& f, const FractionalParams& fp, int m,
                                int cells_per_side = 0, double box_pad = 1.25);

}  // namespace orlicz

#endif
