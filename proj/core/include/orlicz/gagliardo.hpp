#ifndef ORLICZ_GAGLIARDO_HPP
#define ORLICZ_GAGLIARDO_HPP

#include <cstdint>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/report.hpp"
#include "orlicz/targets.hpp"

namespace orlicz {

struct ModularOptions {
  std::uint64_t seed = 42;
  std::size_t mc_budget = 2'000'000;  // kernel evaluations for 2-D grids
  int threads = 0;                    // 0: decide from ORLICZ_KIT_THREADS / hw
};

struct ModularResult {
  double value = 0.0;
  enum class Method { tensor_quadrature, monte_carlo } method = Method::tensor_quadrature;
  std::size_t samples = 0;
  double error = 0.0;  // quadrature bound or MC standard error
  bool divergent = false;
};

/// Precompiled difference-quotient cloud: the modular at any lambda is
/// sum kappa_i A(q_i / lambda). Geometry is fixed once, so Luxemburg
/// bisections and constant searches reuse the same nodes.
struct PairCloud {
  struct Node {
    double q;      // |u(x)-u(y)| / |x-y|^s
    double kappa;  // quadrature/MC weight including the kernel
  };
  struct Stratum {
    std::size_t begin = 0, end = 0;  // node range
    std::size_t samples = 0;         // drawn samples incl. zero-valued ones
  };
  std::vector<Node> nodes;
  std::vector<Stratum> strata;  // Monte Carlo bookkeeping; empty for 1-D
  double rel_error = 0.0;       // truncation bound for tensor clouds
  bool divergent = false;
  ModularResult::Method method = ModularResult::Method::tensor_quadrature;
  std::size_t kernel_evals = 0;

  ModularValue evaluate(const YoungFunction& A, double lambda) const;
};

/// probe_A, when given, drives the near-diagonal divergence watch with the
/// actual integrand growth; otherwise a quadratic reference is used.
PairCloud build_pair_cloud(const GridFunction& u, double s, const ModularOptions& opts = {},
                           const YoungFunction* probe_A = nullptr);

ModularResult fractional_modular(const GridFunction& u, double s, const YoungFunction& A,
                                 double lambda, const ModularOptions& opts = {});

NormResult gagliardo_seminorm(const GridFunction& u, double s, const YoungFunction& A,
                              const ModularOptions& opts = {});

/// Symmetric rearrangement does not increase the modular.
VerificationReport verify_polya_szego(const GridFunction& u, double s,
                                      const YoungFunction& A,
                                      const ModularOptions& opts = {});

/// || u(x)/|x|^s ||_{L^hatA} <= C |u|_{s,A}; the ratio is recorded.
VerificationReport verify_fractional_hardy(const GridFunction& u, const TargetSet& ts,
                                           double c_cap = 1e3,
                                           const ModularOptions& opts = {});

/// Mean-value modular bound with a searched constant, plus the norm form and
/// the median variant.
VerificationReport verify_poincare(const GridFunction& u, double s,
                                   const YoungFunction& A,
                                   const ModularOptions& opts = {});

/// Norm ratios against both optimal targets, and their mutual ordering.
VerificationReport verify_sobolev_embedding(const GridFunction& u, const TargetSet& ts,
                                            double c_cap = 1e3,
                                            const ModularOptions& opts = {});

/// A C^1 function sampled with exact derivative values.
struct SmoothGrid1D {
  GridFunction u;
  std::vector<double> du;
};

struct TrendReport {
  std::vector<double> s_values;
  std::vector<double> scaled_modulars;  // (1-s) * modular
  double limit_value = 0.0;             // int Abar(|u'|)
  std::vector<double> relative_gaps;
  bool gaps_decreasing = false;
};

/// (1-s) * modular against the dilation-averaged limit functional.
TrendReport bbm_limit_check(const SmoothGrid1D& u, const YoungFunction& A,
                            const std::vector<double>& s_list);

/// Young function tau -> int_0^tau A(sigma) dsigma/sigma summed over the two
/// directions of the line (the n = 1 limit integrand).
double bbm_limit_integrand(const YoungFunction& A, double t);

/// min(|r|, t) sign(r) applied cellwise.
GridFunction truncate_levels(const GridFunction& u, double level);

/// Discrete median: smallest level whose super-level set has measure <= |O|/2.
double median(const GridFunction& u);

}  // namespace orlicz

#endif
