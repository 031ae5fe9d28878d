#include "orlicz/targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  const int count = std::max(2, int(per_decade * std::log10(hi / lo)) + 1);
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (count - 1));
  return g;
}

// Cumulative integral of a positive integrand with anchors on a log grid;
// the head below the first anchor comes from the singularity-aware routine.
class CumulativeIntegral {
 public:
  CumulativeIntegral(ScalarFn f, double lo, double hi, int per_decade)
      : f_(std::move(f)) {
    anchors_t_ = log_grid(lo, hi, per_decade);
    anchors_v_.resize(anchors_t_.size());
    const auto head = integrate_to_zero(f_, anchors_t_.front(), 1e-12);
    head_ok_ = head.converged;
    double acc = head.value;
    anchors_v_[0] = acc;
    for (std::size_t i = 1; i < anchors_t_.size(); ++i) {
      acc += gauss15(f_, anchors_t_[i - 1], anchors_t_[i]);
      anchors_v_[i] = acc;
    }
  }

  bool head_converged() const { return head_ok_; }

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (t <= anchors_t_.front()) return integrate_to_zero(f_, t, 1e-11).value;
    const auto it = std::upper_bound(anchors_t_.begin(), anchors_t_.end(), t);
    const std::size_t idx = std::size_t(it - anchors_t_.begin()) - 1;
    if (idx + 1 < anchors_t_.size())
      return anchors_v_[idx] + gauss15(f_, anchors_t_[idx], t);
    double acc = anchors_v_.back();
    double a = anchors_t_.back();
    while (a * 2.0 < t) {
      acc += gauss15(f_, a, a * 2.0);
      a *= 2.0;
    }
    return acc + gauss15(f_, a, t);
  }

 private:
  ScalarFn f_;
  std::vector<double> anchors_t_;
  std::vector<double> anchors_v_;
  bool head_ok_ = true;
};

// Natural cubic spline of log F against log t; keeps repeated evaluations of
// an expensively-built monotone function cheap and smooth.
class LogLogSpline {
 public:
  LogLogSpline(const std::vector<double>& t, const std::vector<double>& F) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (F[i] > 0.0 && std::isfinite(F[i]) && t[i] > 0.0) {
        x_.push_back(std::log(t[i]));
        y_.push_back(std::log(F[i]));
      }
    }
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    if (n < 3) return;
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    m_[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }

  bool covers(double t) const {
    if (x_.size() < 3 || !(t > 0.0)) return false;
    const double lx = std::log(t);
    return lx >= x_.front() && lx <= x_.back();
  }

  double operator()(double t) const {
    const double lx = std::log(t);
    const auto it = std::upper_bound(x_.begin(), x_.end(), lx);
    std::size_t i = std::min(std::max<std::size_t>(it - x_.begin(), 1), x_.size() - 1);
    const double h = x_[i] - x_[i - 1];
    const double u = (lx - x_[i - 1]) / h;
    const double v = 1.0 - u;
    const double y = v * y_[i - 1] + u * y_[i] +
                     h * h / 6.0 *
                         ((v * v * v - v) * m_[i - 1] + (u * u * u - u) * m_[i]);
    return std::exp(y);
  }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace

IntegralConditions check_integral_conditions(const YoungFunction& A,
                                             const FractionalParams& fp) {
  fp.validate();
  if (!A.finite_everywhere())
    throw unsupported_function_error("check_integral_conditions: non-finite function");
  IntegralConditions out;
  const double expo = fp.s / (double(fp.n) - fp.s);

  auto integrand = [&A, expo](double t) -> double {
    const double a = A(t);
    return a > 0.0 ? std::pow(t / a, expo) : kInf;
  };

  {
    const auto ts = log_grid(1e-8, 1e-2, 6);
    std::vector<double> gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) gs[i] = integrand(ts[i]);
    out.fit_zero = fit_power_log(ts, gs);
    const auto v = classify_tail(out.fit_zero, /*at_zero=*/true);
    out.zero_condition = (v == TailVerdict::convergent);
    if (v == TailVerdict::indeterminate) out.indeterminate = true;
  }
  {
    const auto ts = log_grid(1e2, 1e8, 6);
    std::vector<double> gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) gs[i] = integrand(ts[i]);
    out.fit_infinity = fit_power_log(ts, gs);
    const auto v = classify_tail(out.fit_infinity, /*at_zero=*/false);
    out.infinity_condition = (v == TailVerdict::divergent);
    if (v == TailVerdict::indeterminate) out.indeterminate = true;
  }
  {
    // Conjugate-side form of the zero condition.
    const YoungFunction At = conjugate(A);
    const double pow_dual = 1.0 + double(fp.n) / (double(fp.n) - fp.s);
    const auto ts = log_grid(1e-8, 1e-2, 6);
    std::vector<double> gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      gs[i] = At(ts[i]) / std::pow(ts[i], pow_dual);
    const auto fit = fit_power_log(ts, gs);
    const auto v = classify_tail(fit, /*at_zero=*/true);
    out.dual_zero_condition = (v == TailVerdict::convergent);
    if (v == TailVerdict::indeterminate) out.indeterminate = true;
  }
  if (out.zero_condition != out.dual_zero_condition && !out.indeterminate) {
    out.indeterminate = true;
    out.diagnostics = "primary and conjugate-side zero tests disagree";
  }
  return out;
}

MonotoneMap build_H(const YoungFunction& A, const FractionalParams& fp) {
  fp.validate();
  const auto cond = check_integral_conditions(A, fp);
  if (cond.indeterminate)
    throw admissibility_error("build_H: admissibility test indeterminate (critical exponent)");
  if (!cond.zero_condition)
    throw admissibility_error("build_H: integrand not integrable at zero");

  const double expo = fp.s / (double(fp.n) - fp.s);
  const double outer_pow = (double(fp.n) - fp.s) / double(fp.n);
  auto integrand = [A, expo](double t) -> double {
    const double a = A(t);
    return a > 0.0 ? std::pow(t / a, expo) : 0.0;
  };
  auto cum = std::make_shared<CumulativeIntegral>(integrand, 1e-9, 1e9, 16);
  auto fwd = [cum, outer_pow](double t) -> double {
    return t > 0.0 ? std::pow((*cum)(t), outer_pow) : 0.0;
  };
  return MonotoneMap(fwd, 0.0, kInf, "H");
}

YoungFunction build_sobolev_conjugate(const YoungFunction& A, const FractionalParams& fp) {
  return build_sobolev_conjugate(A, fp, build_H(A, fp));
}

YoungFunction build_sobolev_conjugate(const YoungFunction& A, const FractionalParams& fp,
                                      const MonotoneMap& H) {
  fp.validate();
  auto exact = [A, H](double t) -> double { return t > 0.0 ? A(H.inverse(t)) : 0.0; };

  const auto grid = log_grid(1e-9, 1e9, 32);
  std::vector<double> samples(grid.size());
  double spline_hi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v;
    try {
      v = exact(grid[i]);
    } catch (const std::range_error&) {
      v = kInf;
    }
    samples[i] = v;
    if (std::isfinite(v)) spline_hi = grid[i];
  }
  auto spline = std::make_shared<LogLogSpline>(grid, samples);

  auto eval = [spline, exact](double t) -> double {
    if (t <= 0.0) return 0.0;
    if (spline->covers(t)) return (*spline)(t);
    try {
      return exact(t);
    } catch (const std::range_error&) {
      return kInf;
    }
  };
  auto density = [eval](double t) -> double {
    if (t <= 0.0) return 0.0;
    const double h = t * 1e-5;
    const double lo = eval(t - h), hi = eval(t + h);
    if (!std::isfinite(hi)) return kInf;
    return std::max(0.0, (hi - lo) / (2.0 * h));
  };
  YoungFunction out = YoungFunction::analytic(eval, density, "sobolev_conjugate(" +
                                                                 A.name() + ")");

  // Convexity certificate on sampled triples.
  for (double t = 1e-6; t * 4.0 <= std::min(spline_hi, 1e6); t *= 2.0) {
    const double f1 = out(t), f2 = out(2 * t), f3 = out(4 * t);
    if (!std::isfinite(f3)) break;
    const double chord = f1 + (f3 - f1) * (2.0 * t - t) / (4.0 * t - t);
    if (f2 > chord * (1.0 + 1e-6))
      throw precision_error("build_sobolev_conjugate: convexity check failed near t=" +
                            std::to_string(t));
  }
  return out;
}

YoungFunction build_hat(const YoungFunction& A, const FractionalParams& fp,
                        HatBuildInfo* info) {
  fp.validate();
  const auto cond = check_integral_conditions(A, fp);
  if (cond.indeterminate)
    throw admissibility_error("build_hat: admissibility test indeterminate");
  if (!cond.zero_condition || !cond.infinity_condition)
    throw admissibility_error("build_hat: integral conditions fail");
  if (!A.density_positive())
    throw unsupported_function_error(
        "build_hat: density vanishes on an initial interval");

  const double n = fp.n, s = fp.s;
  const double inner_expo = s / (n - s);
  const double outer_expo = s / (s - n);  // negative
  const double a_pow = n / (n - s);

  auto inv_density_pow = [A, inner_expo](double rho) -> double {
    const double a = A.density(rho);
    return a > 0.0 ? std::pow(a, -inner_expo) : kInf;
  };
  auto G = std::make_shared<CumulativeIntegral>(inv_density_pow, 1e-9, 1e9, 16);
  if (!G->head_converged())
    throw admissibility_error("build_hat: inner integral diverges at zero");

  double worst_tail = 0.0;

  // hat-density inverse: nested improper integral, truncated once the
  // monotonicity-based tail bound drops below 1e-12 of the accumulated value.
  auto hat_density_inverse = [&, G](double r) -> double {
    if (!(r > 0.0)) return 0.0;
    const double t0 = density_inverse(A, r);
    if (!std::isfinite(t0)) return kInf;
    if (t0 <= 0.0) return 0.0;
    auto outer = [&](double t) -> double {
      const double g = (*G)(t);
      const double a = A.density(t);
      if (!(g > 0.0) || !(a > 0.0)) return 0.0;
      return std::pow(g, -n / s) * std::pow(a, -a_pow);
    };
    double acc = 0.0;
    double a_seg = t0;
    double tail = kInf;
    for (int k = 0; k < 600; ++k) {
      const double b_seg = a_seg * 2.0;
      acc += gauss15(outer, a_seg, b_seg);
      a_seg = b_seg;
      const double gT = (*G)(a_seg);
      const double aT = A.density(a_seg);
      tail = (gT > 0 && aT > 0)
                 ? std::pow(gT, 1.0 - n / s) / ((n / s - 1.0) * aT)
                 : kInf;
      if (tail < 1e-12 * acc) break;
      if (a_seg > 1e250) break;
    }
    if (!(acc > 0.0)) return kInf;
    if (tail > 1e-6 * acc)
      throw precision_error("build_hat: outer tail bound exceeded budget");
    worst_tail = std::max(worst_tail, tail / acc);
    acc += 0.5 * tail;  // midpoint of the certified tail interval
    return std::pow(acc, outer_expo);
  };

  const auto r_grid = log_grid(1e-9, 1e9, 32);
  std::vector<std::pair<double, double>> knots;
  knots.reserve(r_grid.size());
  double prev_tau = 0.0;
  for (double r : r_grid) {
    const double tau = hat_density_inverse(r);
    if (!std::isfinite(tau)) break;
    if (tau <= prev_tau) continue;  // keep the knot abscissae strictly increasing
    knots.emplace_back(tau, r);
    prev_tau = tau;
  }
  if (knots.size() < 8)
    throw precision_error("build_hat: too few usable knots for the density");
  if (info) {
    info->tail_bound = worst_tail;
    info->samples = int(knots.size());
  }
  return YoungFunction::tabulated(std::move(knots));
}

TargetSet build_targets(const YoungFunction& A, const FractionalParams& fp) {
  TargetSet ts;
  ts.A = A;
  ts.fp = fp;
  ts.H = build_H(A, fp);
  ts.sobolev_conjugate = build_sobolev_conjugate(A, fp, ts.H);
  ts.hat = build_hat(A, fp);
  return ts;
}

CompactnessVerdict compact_target_test(const YoungFunction& A, const YoungFunction& B,
                                       const FractionalParams& fp) {
  return compact_target_test(build_targets(A, fp), B);
}

CompactnessVerdict compact_target_test(const TargetSet& ts, const YoungFunction& B) {
  CompactnessVerdict v;

  // Growth route: B(lambda t)/A_{n/s}(t) -> 0 on the representable window.
  v.growth_trace = grows_essentially_slower(B, ts.sobolev_conjugate, 1e-3, 1e8);
  v.growth_route = v.growth_trace.result;
  v.growth_route_conclusive = true;
  for (const auto& trace : v.growth_trace.ratios) {
    int finite = 0;
    for (double x : trace)
      if (std::isfinite(x)) ++finite;
    if (finite < 4) v.growth_route_conclusive = false;
  }

  // Inverse route: H(A^{-1}(t)) / B^{-1}(t) along a decade grid.
  for (double t = 1e2; t <= 1e12 * 1.0000001; t *= 10.0) {
    double ratio = std::numeric_limits<double>::quiet_NaN();
    try {
      const double num = ts.H(ts.A.inverse(t));
      const double den = B.inverse(t);
      if (den > 0.0 && std::isfinite(num) && std::isfinite(den)) ratio = num / den;
    } catch (const std::range_error&) {
    }
    v.inverse_t.push_back(t);
    v.inverse_ratio.push_back(ratio);
  }
  {
    std::vector<double> tail;
    for (double x : v.inverse_ratio)
      if (std::isfinite(x)) tail.push_back(x);
    v.inverse_route_conclusive = tail.size() >= 4;
    if (v.inverse_route_conclusive) {
      bool monotone = true;
      for (std::size_t i = 1; i + 1 < tail.size(); ++i)
        if (tail[i + 1] > tail[i] * (1.0 + 1e-9)) monotone = false;
      bool shrinking = true;
      for (std::size_t i = tail.size() - 3; i < tail.size(); ++i)
        if (tail[i] > tail[i - 1] * 0.99) shrinking = false;
      v.inverse_route = monotone && (tail.back() < 1e-3 || shrinking);
    }
  }

  if (v.growth_route_conclusive && v.inverse_route_conclusive &&
      v.growth_route != v.inverse_route) {
    v.indeterminate = true;
    v.compact = v.inverse_route;
  } else if (v.inverse_route_conclusive) {
    v.compact = v.inverse_route;
  } else if (v.growth_route_conclusive) {
    v.compact = v.growth_route;
  } else {
    v.indeterminate = true;
  }
  return v;
}

}  // namespace orlicz
