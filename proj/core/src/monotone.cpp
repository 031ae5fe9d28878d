#include "orlicz/monotone.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace orlicz {

namespace {

bool close_enough(double a, double b, const InversionTol& tol) {
  const double w = std::abs(b - a);
  return w <= tol.abs || w <= tol.rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double last_true_point(const std::function<bool(double)>& pred, double lo, double hint,
                       const InversionTol& tol) {
  if (!pred(lo)) return lo;
  double t = std::max(hint, lo > 0 ? lo * 2 : 1e-12);
  double last_good = lo;
  while (pred(t)) {
    last_good = t;
    t *= 2.0;
    if (t > tol.cap) return last_good;  // true everywhere we can see
  }
  double a = last_good, b = t;
  while (!close_enough(a, b, tol)) {
    const double mid = 0.5 * (a + b);
    (pred(mid) ? a : b) = mid;
  }
  return a;
}

MonotoneMap::MonotoneMap(std::function<double(double)> forward, double lo, double hi,
                         std::string name)
    : forward_(std::move(forward)), lo_(lo), hi_(hi), name_(std::move(name)) {}

double MonotoneMap::inverse(double y) const {
  if (!forward_) throw std::logic_error("MonotoneMap: empty map");
  const InversionTol tol;
  double a = lo_;
  const double fa = forward_(a);
  if (y <= fa) return a;
  double b = (std::isfinite(hi_) && hi_ > a) ? hi_ : std::max(2.0 * std::abs(a), 1.0);
  while (forward_(b) < y) {
    if (b > tol.cap)
      throw std::range_error("MonotoneMap: value " + std::to_string(y) +
                             " above reachable range of " + name_);
    b *= 2.0;
  }
  while (!close_enough(a, b, tol)) {
    const double mid = 0.5 * (a + b);
    (forward_(mid) < y ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace orlicz
