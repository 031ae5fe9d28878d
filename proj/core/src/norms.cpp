#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

NormResult luxemburg_from_modular(const std::function<ModularValue(double)>& modular,
                                  double scale_hint) {
  NormResult nr;
  if (!(scale_hint > 0.0)) return nr;  // identically zero

  auto rho = [&](double lambda) {
    ++nr.iterations;
    return modular(lambda);
  };

  double lo = scale_hint, hi = scale_hint;
  ModularValue at_hi = rho(hi);
  // Expand until the modular drops to 1 or the bracket hits the guard.
  while (!(at_hi.value <= 1.0)) {
    hi *= 2.0;
    if (hi > 1e300) {
      nr.value = kInf;
      nr.modular_at_value = at_hi.value;
      return nr;
    }
    at_hi = rho(hi);
  }
  ModularValue at_lo = rho(lo);
  while (at_lo.value <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-300) {
      nr.value = 0.0;  // modular vanishes for every positive lambda
      nr.modular_at_value = at_lo.value;
      nr.quad_error = at_lo.error;
      return nr;
    }
    at_lo = rho(lo);
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    const ModularValue m = rho(mid);
    if (m.value <= 1.0) {
      hi = mid;
      at_hi = m;
    } else {
      lo = mid;
    }
  }
  nr.value = 0.5 * (lo + hi);
  nr.modular_at_value = at_hi.value;
  nr.quad_error = at_hi.error;
  return nr;
}

NormResult luxemburg_norm(const YoungFunction& A, const GridFunction& f) {
  const double scale = max_abs(f.values);
  auto modular = [&](double lambda) {
    ModularValue mv;
    for (double v : f.values) {
      if (v == 0.0) continue;
      mv.value += A(std::abs(v) / lambda) * f.cell_measure;
      if (!std::isfinite(mv.value)) break;
    }
    return mv;
  };
  return luxemburg_from_modular(modular, scale);
}

NormResult luxemburg_norm(const YoungFunction& A, const RearrangedProfile& p) {
  const double scale = max_abs(p.values);
  auto modular = [&](double lambda) {
    ModularValue mv;
    for (double v : p.values) {
      if (v == 0.0) continue;
      mv.value += A(std::abs(v) / lambda) * p.segment_measure;
      if (!std::isfinite(mv.value)) break;
    }
    return mv;
  };
  return luxemburg_from_modular(modular, scale);
}

NormResult luxemburg_weighted_power(const YoungFunction& A, const RearrangedProfile& p,
                                    double e, double prefactor) {
  const double m = p.segment_measure;
  const double scale = prefactor * max_abs(p.values) *
                       (e < 0 ? std::pow(m * 0.5, e) : std::pow(p.total_measure(), e));

  auto modular = [&, e](double lambda) {
    ModularValue mv;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      const double v = prefactor * std::abs(p.values[k]);
      if (v == 0.0) continue;
      const double c = v / lambda;
      const double ra = k * m, rb = (k + 1) * m;
      if (e == 0.0) {
        mv.value += A(c) * m;
      } else if (k == 0 && e < 0.0) {
        // substitute t = c r^e: dr = -(1/|e|) (t/c)^{-q} dt / t with q = -1/e
        const double q = -1.0 / e;
        const double tb = c * std::pow(rb, e);
        const auto qr = integrate_to_infinity(
            [&A, q](double t) { return A(t) * std::pow(t, -1.0 - q); }, tb, 1e-11);
        if (!qr.converged) {
          mv.value = kInf;
          return mv;
        }
        mv.value += q * std::pow(c, q) * qr.value;
        mv.error += q * std::pow(c, q) * qr.error;
      } else {
        const auto qr = integrate_adaptive(
            [&A, c, e](double r) { return A(c * std::pow(r, e)); }, ra, rb, 1e-11);
        mv.value += qr.value;
        mv.error += qr.error;
      }
      if (!std::isfinite(mv.value)) return mv;
    }
    return mv;
  };
  return luxemburg_from_modular(modular, scale);
}

NormResult orlicz_lorentz_norm(const YoungFunction& A, double q, const GridFunction& f) {
  return orlicz_lorentz_norm(A, q, decreasing_rearrangement(f));
}

NormResult orlicz_lorentz_norm(const YoungFunction& A, double q,
                               const RearrangedProfile& star) {
  if (!(q > 1.0))
    throw std::invalid_argument("orlicz_lorentz_norm: q must exceed 1");
  const auto tail = integrate_to_infinity(
      [&A, q](double t) { return A(t) * std::pow(t, -1.0 - q); }, 1.0, 1e-9);
  if (!tail.converged)
    throw not_normable_error("orlicz_lorentz_norm: int^inf A(t)/t^{1+q} dt diverges");
  return luxemburg_weighted_power(A, star, -1.0 / q);
}

NormResult orlicz_lorentz_dual_norm(const YoungFunction& A, double q,
                                    const GridFunction& f) {
  return orlicz_lorentz_dual_norm(A, q, decreasing_rearrangement(f),
                                  f.kind == GridFunction::Domain::halfline);
}

NormResult orlicz_lorentz_dual_norm(const YoungFunction& A, double q,
                                    const RearrangedProfile& star, bool infinite_measure) {
  if (!(q < -1.0))
    throw std::invalid_argument("orlicz_lorentz_dual_norm: q must be below -1");
  if (infinite_measure) {
    const double conj = -q / (-q - 1.0);  // Hoelder conjugate of -q
    const auto head = integrate_to_zero(
        [&A, conj](double t) { return A(t) * std::pow(t, -1.0 - conj); }, 1.0, 1e-9);
    if (!head.converged)
      throw not_normable_error(
          "orlicz_lorentz_dual_norm: int_0 A(t)/t^{1+(-q)'} dt diverges");
  }

  const double e = -1.0 / q;  // positive exponent
  const double m = star.segment_measure;
  // cumulative integrals of u* at segment starts
  std::vector<double> cum(star.values.size() + 1, 0.0);
  for (std::size_t k = 0; k < star.values.size(); ++k)
    cum[k + 1] = cum[k] + star.values[k] * m;

  const double scale =
      max_abs(star.values) * std::pow(star.total_measure(), e) + 1e-300;

  auto modular = [&, e](double lambda) {
    ModularValue mv;
    for (std::size_t k = 0; k < star.values.size(); ++k) {
      const double ra = k * m, rb = (k + 1) * m;
      const double v = star.values[k];
      const double c0 = cum[k] - v * ra;  // u**(r) = v + c0 / r on the cell
      auto integrand = [&](double r) {
        const double dstar = v + (r > 0 ? c0 / r : 0.0);
        return A(std::pow(r, e) * dstar / lambda);
      };
      const auto qr = (k == 0) ? integrate_adaptive(integrand, 1e-30 * m, rb, 1e-11)
                               : integrate_adaptive(integrand, ra, rb, 1e-11);
      mv.value += qr.value;
      mv.error += qr.error;
      if (!std::isfinite(mv.value)) return mv;
    }
    return mv;
  };
  return luxemburg_from_modular(modular, scale);
}

NormResult lorentz_zygmund_norm(double sigma, double p, double gamma, double delta,
                                const GridFunction& f, double L) {
  return lorentz_zygmund_norm(sigma, p, gamma, delta, decreasing_rearrangement(f), L);
}

NormResult lorentz_zygmund_norm(double sigma, double p, double gamma, double delta,
                                const RearrangedProfile& star, double L) {
  const bool sigma_inf = std::isinf(sigma);
  const bool p_inf = std::isinf(p);
  const bool ok = (sigma == 1.0 && p == 1.0 && gamma >= 0.0) ||
                  (!sigma_inf && sigma > 1.0) ||
                  (sigma_inf && !p_inf && gamma + 1.0 / p < 0.0) ||
                  (sigma_inf && p_inf && gamma <= 0.0);
  if (!ok)
    throw std::invalid_argument(
        "lorentz_zygmund_norm: parameter combination not validated as a norm");

  const double m = star.segment_measure;
  auto weight = [=](double r) {
    double w = sigma_inf ? 1.0 : std::pow(r, 1.0 / sigma);
    if (!p_inf) w *= std::pow(r, -1.0 / p);
    const double lg = std::log1p(L / r);
    if (gamma != 0.0) w *= std::pow(lg, gamma);
    if (delta != 0.0) w *= std::pow(std::log1p(lg), delta);
    return w;
  };

  NormResult nr;
  if (p_inf) {
    double sup = 0.0;
    for (std::size_t k = 0; k < star.values.size(); ++k) {
      if (star.values[k] == 0.0) continue;
      const double ra = std::max(k * m, 1e-300), rb = (k + 1) * m;
      const double cand = star.values[k] *
                          std::max({weight(ra), weight(rb), weight(0.5 * (ra + rb))});
      sup = std::max(sup, cand);
    }
    nr.value = sup;
    return nr;
  }

  double acc = 0.0, err = 0.0;
  for (std::size_t k = 0; k < star.values.size(); ++k) {
    const double v = std::abs(star.values[k]);
    if (v == 0.0) continue;
    const double ra = k * m, rb = (k + 1) * m;
    auto integrand = [&](double r) { return std::pow(v * weight(r), p); };
    if (k == 0) {
      const auto qr = integrate_to_zero(integrand, rb, 1e-11);
      if (!qr.converged) {
        nr.value = kInf;
        return nr;
      }
      acc += qr.value;
      err += qr.error;
    } else {
      const auto qr = integrate_adaptive(integrand, ra, rb, 1e-11);
      acc += qr.value;
      err += qr.error;
    }
  }
  nr.value = std::pow(acc, 1.0 / p);
  nr.quad_error = err;
  return nr;
}

}  // namespace orlicz
