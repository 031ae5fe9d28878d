#ifndef ORLICZ_EXTENSION_HPP
#define ORLICZ_EXTENSION_HPP

#include <functional>

#include "orlicz/gagliardo.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/report.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// Lipschitz multiplier into [0, 1].
struct CutoffFunction {
  std::function<double(double, double)> eval;  // second argument unused in 1-D
  double lipschitz = 1.0;

  /// Samples the bound and the Lipschitz estimate on the grid; throws on
  /// violation.
  void validate_on(const GridFunction& g) const;
};

struct ZeroExtensionResult {
  GridFunction extended;
  VerificationReport report;  // ambient modular vs domain modular + cross bound
};

/// Extends u (supported in the inner region at distance `margin` from the
/// domain boundary) by zero onto the ambient box; the report checks the
/// modular growth against the distance-weight cross-term bound.
ZeroExtensionResult extend_zero(const GridFunction& u, double margin,
                                double ambient_pad, double s, const YoungFunction& A,
                                const ModularOptions& opts = {});

/// Even reflection across the left endpoint (1-D) or the x-axis edge (2-D
/// boxes); grid stays aligned.
GridFunction reflect_extend(const GridFunction& u);

/// Modular bound modular(reflected) <= 4 modular(u) with quadrature budget.
VerificationReport verify_reflection_bound(const GridFunction& u, double s,
                                           const YoungFunction& A,
                                           const ModularOptions& opts = {});

struct CutoffResult {
  GridFunction product;
  VerificationReport report;  // |zeta u|_{s,A} <= C (||u||_{L^A} + |u|_{s,A})
};

CutoffResult cutoff_multiply(const GridFunction& u, const CutoffFunction& zeta, double s,
                             const YoungFunction& A, const ModularOptions& opts = {});

struct PipelineResult {
  GridFunction extended;
  VerificationReport report;  // restriction identity + norm growth constant
};

/// Model-geometry composite: reflect across both endpoints of (0,1), damp
/// with a Lipschitz cutoff, extend by zero to an ambient interval.
PipelineResult extension_pipeline(const GridFunction& u, double s,
                                  const YoungFunction& A,
                                  const ModularOptions& opts = {});

}  // namespace orlicz

#endif
