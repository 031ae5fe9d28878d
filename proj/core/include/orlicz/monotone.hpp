#ifndef ORLICZ_MONOTONE_HPP
#define ORLICZ_MONOTONE_HPP

#include <functional>
#include <limits>
#include <string>

namespace orlicz {

/// Inversion tolerances: absolute 1e-12 or relative 1e-10, whichever is
/// looser. Bracket expansion doubles until a sign change, capped at 1e300.
struct InversionTol {
  double abs = 1e-12;
  double rel = 1e-10;
  double cap = 1e300;
};

/// sup{ t >= lo : pred(t) } for a predicate that is true on [lo, t*] and
/// false beyond. Expands the upper bracket by doubling from `hint`.
double last_true_point(const std::function<bool(double)>& pred, double lo,
                       double hint, const InversionTol& tol = {});

/// A strictly increasing scalar map with a bisection-backed inverse.
class MonotoneMap {
 public:
  MonotoneMap() = default;
  MonotoneMap(std::function<double(double)> forward, double lo, double hi,
              std::string name = {});

  double operator()(double t) const { return forward_(t); }
  double inverse(double y) const;

  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  const std::string& name() const { return name_; }
  bool valid() const { return static_cast<bool>(forward_); }

 private:
  std::function<double(double)> forward_;
  double lo_ = 0.0;
  double hi_ = std::numeric_limits<double>::infinity();
  std::string name_;
};

}  // namespace orlicz

#endif
