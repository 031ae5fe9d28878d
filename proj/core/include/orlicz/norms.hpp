#ifndef ORLICZ_NORMS_HPP
#define ORLICZ_NORMS_HPP

#include <functional>
#include <stdexcept>

#include "orlicz/rearrange.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// The weighted functional fails its normability precondition.
struct not_normable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormResult {
  double value = 0.0;  // +inf marker possible
  double modular_at_value = 0.0;
  int iterations = 0;
  double quad_error = 0.0;
};

/// Modular value together with accumulated quadrature error.
struct ModularValue {
  double value = 0.0;
  double error = 0.0;
};

/// Luxemburg norm from an arbitrary modular lambda -> rho(f/lambda).
NormResult luxemburg_from_modular(const std::function<ModularValue(double)>& modular,
                                  double scale_hint);

NormResult luxemburg_norm(const YoungFunction& A, const GridFunction& f);
NormResult luxemburg_norm(const YoungFunction& A, const RearrangedProfile& p);

/// Luxemburg norm of r^e * p(r) over (0, L); the power weight is integrated
/// per cell by substitution, not sampled.
NormResult luxemburg_weighted_power(const YoungFunction& A, const RearrangedProfile& p,
                                    double weight_exponent, double prefactor = 1.0);

/// ||r^{-1/q} u*(r)||_{L^A}, q > 1.
NormResult orlicz_lorentz_norm(const YoungFunction& A, double q, const GridFunction& f);
NormResult orlicz_lorentz_norm(const YoungFunction& A, double q,
                               const RearrangedProfile& star);

/// ||r^{-1/q} u**(r)||_{L^A}, q < -1.
NormResult orlicz_lorentz_dual_norm(const YoungFunction& A, double q,
                                    const GridFunction& f);
NormResult orlicz_lorentz_dual_norm(const YoungFunction& A, double q,
                                    const RearrangedProfile& star, bool infinite_measure);

/// || u*(r) r^{1/sigma-1/p} (log(1+L/r))^gamma (log(1+log(1+L/r)))^delta ||_p.
/// sigma/p may be +inf per the accepted parameter regimes.
NormResult lorentz_zygmund_norm(double sigma, double p, double gamma, double delta,
                                const GridFunction& f, double L);
NormResult lorentz_zygmund_norm(double sigma, double p, double gamma, double delta,
                                const RearrangedProfile& star, double L);

}  // namespace orlicz

#endif
