#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "orlicz/monotone.hpp"

#include <json.hpp>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Anchor table for density-integrated evaluation.
constexpr double kAnchorLo = 1e-12;
constexpr double kAnchorHi = 1e12;
constexpr int kAnchorsPerDecade = 16;

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::global: return "global";
    case Regime::near_zero: return "near-zero";
    case Regime::near_infinity: return "near-infinity";
  }
  return "?";
}

struct YoungFunction::Impl {
  Form form = Form::analytic;
  std::string name;

  ScalarFn eval;     // closed form when set; otherwise anchored integration
  ScalarFn density;  // always set

  bool finite = true;
  bool positive_density = true;

  std::optional<PowerLogParams> plog;
  std::vector<std::pair<double, double>> knots;  // tabulated only

  std::vector<double> anchor_t;
  std::vector<double> anchor_A;

  void build_anchors() {
    const int decades = int(std::lround(std::log10(kAnchorHi / kAnchorLo)));
    const int count = decades * kAnchorsPerDecade + 1;
    anchor_t.reserve(count);
    anchor_A.reserve(count);
    const double step = std::log(kAnchorHi / kAnchorLo) / (count - 1);
    double acc = integrate_to_zero(density, kAnchorLo).value;
    anchor_t.push_back(kAnchorLo);
    anchor_A.push_back(acc);
    for (int i = 1; i < count; ++i) {
      const double t = kAnchorLo * std::exp(step * i);
      acc += gauss15(density, anchor_t.back(), t);
      if (!std::isfinite(acc)) break;
      anchor_t.push_back(t);
      anchor_A.push_back(acc);
    }
  }

  double integrated_eval(double t) const {
    if (t <= 0.0) return 0.0;
    if (t <= anchor_t.front()) return integrate_to_zero(density, t).value;
    const auto it = std::upper_bound(anchor_t.begin(), anchor_t.end(), t);
    const size_t idx = size_t(it - anchor_t.begin()) - 1;
    if (idx + 1 < anchor_t.size())
      return anchor_A[idx] + gauss15(density, anchor_t[idx], t);
    double acc = anchor_A.back();
    double a = anchor_t.back();
    while (a * 2.0 < t) {
      acc += gauss15(density, a, a * 2.0);
      if (!std::isfinite(acc)) return kInf;
      a *= 2.0;
    }
    acc += gauss15(density, a, t);
    return std::isfinite(acc) ? acc : kInf;
  }
};

double YoungFunction::operator()(double t) const {
  if (!impl_) throw std::logic_error("YoungFunction: empty");
  if (t < 0.0) throw std::domain_error("YoungFunction: negative argument");
  if (t == 0.0) return 0.0;
  if (impl_->eval) return impl_->eval(t);
  return impl_->integrated_eval(t);
}

double YoungFunction::density(double t) const {
  if (!impl_) throw std::logic_error("YoungFunction: empty");
  if (t < 0.0) throw std::domain_error("YoungFunction: negative argument");
  return impl_->density(t);
}

double YoungFunction::inverse(double y) const {
  if (!impl_) throw std::logic_error("YoungFunction: empty");
  if (y < 0.0) throw std::domain_error("YoungFunction: inverse of negative value");
  const auto& self = *this;
  InversionTol tol;
  const double r =
      last_true_point([&self, y](double t) { return self(t) <= y; }, 0.0, 1.0, tol);
  if (r >= tol.cap / 2 && self(r) <= y)
    throw std::range_error("YoungFunction: value " + std::to_string(y) +
                           " is never attained by " + impl_->name);
  return r;
}

bool YoungFunction::finite_everywhere() const { return impl_ && impl_->finite; }
bool YoungFunction::density_positive() const { return impl_ && impl_->positive_density; }
YoungFunction::Form YoungFunction::form() const { return impl_->form; }
const std::string& YoungFunction::name() const { return impl_->name; }

const PowerLogParams* YoungFunction::power_log_params() const {
  return impl_ && impl_->plog ? &*impl_->plog : nullptr;
}

YoungFunction YoungFunction::power(double p) {
  if (p < 1.0) throw std::invalid_argument("YoungFunction::power: p must be >= 1");
  return power_log(PowerLogParams{p, 0.0, p, 0.0});
}

YoungFunction YoungFunction::power_log(double p, double alpha, double p0, double alpha0) {
  return power_log(PowerLogParams{p, alpha, p0, alpha0});
}

YoungFunction YoungFunction::power_log(const PowerLogParams& params) {
  const double p = params.p, alpha = params.alpha;
  const double p0 = params.p0, alpha0 = params.alpha0;
  if (!(p0 > 1.0 || (p0 == 1.0 && alpha0 <= 0.0)))
    throw std::invalid_argument("power_log: need p0 > 1, or p0 = 1 with alpha0 <= 0");
  if (!(p > 1.0 || (p == 1.0 && alpha >= 0.0)))
    throw std::invalid_argument("power_log: need p > 1, or p = 1 with alpha >= 0");

  auto impl = std::make_shared<Impl>();
  impl->form = Form::power_log;
  impl->plog = params;

  const bool pure = (alpha == 0.0 && alpha0 == 0.0 && p0 == p);
  if (pure) {
    impl->name = "t^" + std::to_string(p);
    impl->eval = [p](double t) { return std::pow(t, p); };
    impl->density = [p](double t) {
      if (t <= 0.0) return p == 1.0 ? 1.0 : 0.0;
      return p * std::pow(t, p - 1.0);
    };
    return YoungFunction(std::move(impl));
  }
  impl->name = "powerlog(p=" + std::to_string(p) + ",alpha=" + std::to_string(alpha) +
               ",p0=" + std::to_string(p0) + ",alpha0=" + std::to_string(alpha0) + ")";

  const double c0 = p / p0;  // density continuity at the splice
  auto model = [=](double t) -> double {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0)
      return c0 * p0 * std::pow(t, p0 - 1.0) * std::pow(1.0 + std::log(1.0 / t), alpha0);
    return p * std::pow(t, p - 1.0) * std::pow(1.0 + std::log(t), alpha);
  };

  // The running maximum keeps the spliced density non-decreasing; the model
  // has at most one interior peak below the splice, at log(1/t)=alpha0/(p0-1)-1.
  double peak_t = 1.0, peak_v = model(1.0);
  if (p0 > 1.0 && alpha0 > p0 - 1.0) {
    const double ell = alpha0 / (p0 - 1.0) - 1.0;
    peak_t = std::exp(-ell);
    peak_v = model(peak_t);
  }
  impl->density = [=](double t) -> double {
    const double m = model(t);
    return (t >= peak_t) ? std::max(m, peak_v) : m;
  };
  impl->build_anchors();

  double prev = 0.0;
  for (double t = 1e-6; t <= 1e6; t *= 1.3) {
    const double v = impl->density(t);
    if (v + 1e-12 * std::max(1.0, prev) < prev)
      throw std::invalid_argument("power_log: splice produced a decreasing density");
    prev = v;
  }
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw std::invalid_argument("tabulated: need at least 2 knots");
  std::stable_sort(knots.begin(), knots.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  if (knots.front().first != 0.0) knots.insert(knots.begin(), {0.0, knots.front().second});
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (knots[i + 1].second < knots[i].second)
      throw std::invalid_argument("tabulated: density must be non-decreasing");

  auto impl = std::make_shared<Impl>();
  impl->form = Form::tabulated;
  impl->name = "tabulated(" + std::to_string(knots.size()) + " knots)";
  impl->knots = knots;

  double inf_onset = kInf;
  for (const auto& [t, a] : knots)
    if (!std::isfinite(a)) {
      inf_onset = t;
      break;
    }
  impl->finite = !std::isfinite(inf_onset);

  struct Table {
    std::vector<double> t, a, cum;  // knot abscissae, values, cumulative integral
    double inf_onset;
    double last_slope;
  };
  auto tab = std::make_shared<Table>();
  tab->inf_onset = inf_onset;
  for (const auto& [t, a] : knots) {
    if (!std::isfinite(a)) break;
    tab->t.push_back(t);
    tab->a.push_back(a);
  }
  tab->cum.resize(tab->t.size(), 0.0);
  for (size_t i = 1; i < tab->t.size(); ++i)
    tab->cum[i] =
        tab->cum[i - 1] + 0.5 * (tab->a[i] + tab->a[i - 1]) * (tab->t[i] - tab->t[i - 1]);
  {
    const size_t j = tab->t.size() - 1;
    tab->last_slope = 0.0;
    if (j > 0 && tab->t[j] > tab->t[j - 1] && !std::isfinite(inf_onset))
      tab->last_slope = (tab->a[j] - tab->a[j - 1]) / (tab->t[j] - tab->t[j - 1]);
    if (tab->last_slope < 0) tab->last_slope = 0;
  }

  impl->density = [tab](double t) -> double {
    if (t <= 0.0) return tab->a.front();
    if (t > tab->inf_onset) return kInf;
    const auto it = std::lower_bound(tab->t.begin(), tab->t.end(), t);
    if (it == tab->t.end()) {
      const size_t j = tab->t.size() - 1;
      return tab->a[j] + tab->last_slope * (t - tab->t[j]);
    }
    size_t i = size_t(it - tab->t.begin());
    if (tab->t[i] == t) return tab->a[i];  // left limit at repeated abscissae
    if (i == 0) return tab->a[0];
    const double t0 = tab->t[i - 1], t1 = tab->t[i];
    if (t1 == t0) return tab->a[i - 1];
    return tab->a[i - 1] + (tab->a[i] - tab->a[i - 1]) * (t - t0) / (t1 - t0);
  };

  auto dens = impl->density;
  impl->eval = [tab, dens](double t) -> double {
    if (t <= 0.0) return 0.0;
    if (t > tab->inf_onset) return kInf;
    const auto it = std::lower_bound(tab->t.begin(), tab->t.end(), t);
    if (it == tab->t.end()) {
      const size_t j = tab->t.size() - 1;
      const double dt = t - tab->t[j];
      return tab->cum[j] + tab->a[j] * dt + 0.5 * tab->last_slope * dt * dt;
    }
    const size_t i = size_t(it - tab->t.begin());
    if (tab->t[i] == t) return tab->cum[i];
    const size_t j = i - 1;
    const double a_t = dens(t);
    return tab->cum[j] + 0.5 * (tab->a[j] + a_t) * (t - tab->t[j]);
  };

  impl->positive_density = impl->density(1e-9) > 0.0 || impl->density(1e-300) > 0.0;
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::from_density(ScalarFn density, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->form = Form::analytic;
  impl->name = std::move(name);
  impl->density = std::move(density);
  impl->positive_density = impl->density(1e-9) > 0.0;
  impl->finite = std::isfinite(impl->density(1e6));
  impl->build_anchors();
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::analytic(ScalarFn eval, ScalarFn density, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->form = Form::analytic;
  impl->name = std::move(name);
  impl->eval = std::move(eval);
  impl->density = std::move(density);
  impl->positive_density = impl->density(1e-9) > 0.0;
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::exp_power(double gamma) {
  if (gamma < 1.0) throw std::invalid_argument("exp_power: gamma must be >= 1");
  return analytic(
      [gamma](double t) { return std::expm1(std::pow(t, gamma)); },
      [gamma](double t) {
        if (t <= 0.0) return gamma == 1.0 ? 1.0 : 0.0;
        return gamma * std::pow(t, gamma - 1.0) * std::exp(std::pow(t, gamma));
      },
      "exp(t^" + std::to_string(gamma) + ")-1");
}

YoungFunction YoungFunction::exp_exp_power(double gamma) {
  if (gamma < 1.0) throw std::invalid_argument("exp_exp_power: gamma must be >= 1");
  const double e = std::exp(1.0);
  return analytic(
      [gamma, e](double t) {
        if (t <= 0.0) return 0.0;
        const double inner = std::exp(std::pow(t, gamma));
        return std::isfinite(inner) ? std::exp(inner) - e : kInf;
      },
      [gamma](double t) {
        if (t <= 0.0) return gamma == 1.0 ? std::exp(2.0) : 0.0;
        const double tp = std::pow(t, gamma);
        const double inner = std::exp(tp);
        return gamma * std::pow(t, gamma - 1.0) * inner * std::exp(inner);
      },
      "exp(exp(t^" + std::to_string(gamma) + "))-e");
}

double density_inverse(const YoungFunction& A, double sigma) {
  if (sigma <= 0.0) return 0.0;
  InversionTol tol;
  const double r =
      last_true_point([&A, sigma](double t) { return A.density(t) < sigma; }, 0.0, 1.0, tol);
  if (r >= tol.cap / 2 && A.density(r) < sigma) return kInf;
  return r;
}

YoungFunction conjugate(const YoungFunction& A) {
  if (!A.finite_everywhere())
    throw unsupported_function_error("conjugate: " + A.name() + " is not finite-valued");

  if (const auto* pl = A.power_log_params();
      pl && pl->alpha == 0.0 && pl->alpha0 == 0.0 && pl->p0 == pl->p && pl->p > 1.0) {
    const double p = pl->p;
    const double q = p / (p - 1.0);
    const double coef = (p - 1.0) / p * std::pow(p, -1.0 / (p - 1.0));
    return YoungFunction::analytic(
        [coef, q](double t) { return coef * std::pow(t, q); },
        [coef, q](double s) { return s > 0 ? coef * q * std::pow(s, q - 1.0) : 0.0; },
        "conjugate(t^" + std::to_string(p) + ")");
  }

  // Sample the density inverse on a log grid; pin down where it leaves the
  // reachable range of the density (the conjugate is +inf past that point).
  const int per_decade = 32;
  const double lo = 1e-12, hi = 1e12;
  std::vector<std::pair<double, double>> knots;
  knots.reserve(size_t(per_decade * 24) + 4);
  double onset = kInf;
  const int count = int(24 * per_decade) + 1;
  for (int i = 0; i < count; ++i) {
    const double s = lo * std::pow(hi / lo, double(i) / (count - 1));
    const double v = density_inverse(A, s);
    if (!std::isfinite(v)) {
      onset = s;
      break;
    }
    knots.emplace_back(s, v);
  }
  if (std::isfinite(onset)) {
    InversionTol tol;
    const double edge = last_true_point(
        [&A](double s) { return std::isfinite(density_inverse(A, s)); },
        knots.empty() ? 0.0 : knots.back().first, onset, tol);
    const double v_edge = density_inverse(A, edge);
    if (std::isfinite(v_edge)) knots.emplace_back(edge, v_edge);
    knots.emplace_back(edge, kInf);
  }
  auto out = YoungFunction::tabulated(std::move(knots));
  return out;
}

IndexEstimate matuszewska_index(const YoungFunction& A, Regime regime) {
  if (!A.finite_everywhere())
    throw unsupported_function_error("matuszewska_index: non-finite Young function");
  IndexEstimate est;
  est.regime = regime;
  est.lambdas = {1e2, 1e3, 1e4, 1e5, 1e6};

  auto log_ratio = [&A](double lambda, double t) -> double {
    const double hi = A(lambda * t);
    const double lq = A(t);
    if (!(lq > 0.0) || !std::isfinite(hi))
      return std::numeric_limits<double>::quiet_NaN();
    return std::log(hi) - std::log(lq);
  };

  std::vector<double> logS, logL;
  for (double lambda : est.lambdas) {
    double ls = -kInf;
    if (regime == Regime::global || regime == Regime::near_zero) {
      for (double t = 1e-10; t <= 1e10 * 1.0000001; t *= std::pow(10.0, 0.05)) {
        const double r = log_ratio(lambda, t);
        if (std::isfinite(r)) ls = std::max(ls, r);
      }
    } else {
      // limsup over large t, quadratic extrapolation of log ratio in 1/log t
      std::vector<double> xs, ys;
      for (double t : {1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12}) {
        const double r = log_ratio(lambda, t);
        if (std::isfinite(r)) {
          xs.push_back(1.0 / std::log(t));
          ys.push_back(r);
        }
      }
      if (ys.empty())
        throw unsupported_function_error("matuszewska_index: no finite ratios for " +
                                         A.name());
      if (xs.size() >= 3) {
        double Sx[5] = {0}, b[3] = {0};
        for (size_t i = 0; i < xs.size(); ++i) {
          double xp = 1;
          for (int k = 0; k < 5; ++k) { Sx[k] += xp; xp *= xs[i]; }
          b[0] += ys[i];
          b[1] += ys[i] * xs[i];
          b[2] += ys[i] * xs[i] * xs[i];
        }
        double M[3][4] = {{Sx[0], Sx[1], Sx[2], b[0]},
                          {Sx[1], Sx[2], Sx[3], b[1]},
                          {Sx[2], Sx[3], Sx[4], b[2]}};
        for (int col = 0; col < 3; ++col) {
          int piv = col;
          for (int r = col + 1; r < 3; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
          std::swap(M[col], M[piv]);
          for (int r = 0; r < 3; ++r) {
            if (r == col || std::abs(M[col][col]) < 1e-300) continue;
            const double f = M[r][col] / M[col][col];
            for (int c = col; c < 4; ++c) M[r][c] -= f * M[col][c];
          }
        }
        double c0 = M[0][3] / M[0][0];
        const double ymin = *std::min_element(ys.begin(), ys.end());
        const double ymax = *std::max_element(ys.begin(), ys.end());
        const double spread = ymax - ymin;
        c0 = std::clamp(c0, ymin - spread, ymax + spread);
        ls = c0;
      } else {
        ls = ys.back();
      }
    }
    if (!std::isfinite(ls))
      throw unsupported_function_error("matuszewska_index: non-finite ratio for " +
                                       A.name());
    logS.push_back(ls);
    logL.push_back(std::log(lambda));
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const size_t n = logS.size();
  for (size_t i = 0; i < n; ++i) {
    sx += logL[i];
    sy += logS[i];
    sxx += logL[i] * logL[i];
    sxy += logL[i] * logS[i];
  }
  est.value = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - est.value * sx) / n;
  double res = 0.0;
  for (size_t i = 0; i < n; ++i)
    res = std::max(res, std::abs(icept + est.value * logL[i] - logS[i]) /
                            std::max(1.0, std::abs(logS[i])));
  est.residual = res;
  return est;
}

namespace {

std::vector<double> regime_samples(Regime regime) {
  double lo = 1e-8, hi = 1e8;
  if (regime == Regime::near_zero) hi = 1e-2;
  if (regime == Regime::near_infinity) lo = 1e2;
  std::vector<double> t;
  const int per_decade = 8;
  const int count = int(per_decade * std::lround(std::log10(hi / lo))) + 1;
  for (int i = 0; i < count; ++i)
    t.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return t;
}

}  // namespace

ComparisonVerdict dominates(const YoungFunction& A, const YoungFunction& B, Regime regime) {
  ComparisonVerdict v;
  v.regime = regime;
  const auto ts = regime_samples(regime);
  v.samples = int(ts.size());
  if (regime == Regime::near_zero) v.threshold = 1e-2;
  if (regime == Regime::near_infinity) v.threshold = 1e2;

  for (double logC = -6.0; logC <= 6.0 + 1e-9; logC += 1.0 / 12) {
    const double C = std::pow(10.0, logC);
    bool ok = true;
    for (double t : ts) {
      const double b = B(t);
      const double a = A(C * t);
      if (b > a * (1.0 + 1e-12) + 1e-300) {
        ok = false;
        break;
      }
    }
    if (ok) {
      v.dominates = true;
      v.constant = C;
      return v;
    }
  }
  return v;
}

GrowthEvidence grows_essentially_slower(const YoungFunction& B, const YoungFunction& A,
                                        double eps_decision, double t_max) {
  GrowthEvidence ev;
  ev.lambdas = {0.1, 1.0, 10.0};
  for (double t = 1.0; t <= t_max * 1.0000001; t *= 10.0) ev.t_grid.push_back(t);

  bool all_ok = true;
  for (double lambda : ev.lambdas) {
    std::vector<double> r;
    for (double t : ev.t_grid) {
      const double den = A(t);
      const double num = B(lambda * t);
      r.push_back((den > 0 && std::isfinite(num) && std::isfinite(den))
                      ? num / den
                      : std::numeric_limits<double>::quiet_NaN());
    }
    ev.ratios.push_back(r);

    std::vector<double> tail;
    for (double x : r)
      if (std::isfinite(x)) tail.push_back(x);
    if (tail.size() < 3) {
      all_ok = false;
      continue;
    }
    // Skip a short head, then require a non-increasing run.
    const size_t start = tail.size() >= 6 ? 2 : 0;
    bool monotone = true;
    for (size_t i = start; i + 1 < tail.size(); ++i)
      if (tail[i + 1] > tail[i] * (1.0 + 1e-9)) monotone = false;
    const double last = tail.back();
    // Either already below the decision threshold, or still shrinking by at
    // least 1% per decade over the final stretch (log-speed decay).
    bool shrinking = true;
    const size_t k = tail.size();
    for (size_t i = (k >= 4 ? k - 3 : 1); i < k; ++i)
      if (tail[i] > tail[i - 1] * 0.99) shrinking = false;
    if (!(monotone && (last < eps_decision || shrinking))) all_ok = false;
  }
  ev.result = all_ok;
  return ev;
}

std::string YoungFunction::to_json() const {
  nlohmann::json j;
  if (const auto* pl = power_log_params()) {
    j["form"] = "powerlog";
    j["p"] = pl->p;
    j["alpha"] = pl->alpha;
    j["p0"] = pl->p0;
    j["alpha0"] = pl->alpha0;
  } else if (form() == Form::tabulated) {
    j["form"] = "tabulated";
    nlohmann::json kn = nlohmann::json::array();
    for (const auto& [t, a] : impl_->knots) {
      if (std::isfinite(a))
        kn.push_back({t, a});
      else
        kn.push_back({t, "inf"});
    }
    j["knots"] = kn;
  } else {
    j["form"] = "analytic";
    j["name"] = name();
  }
  return j.dump();
}

YoungFunction YoungFunction::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::string form = j.at("form").get<std::string>();
  if (form == "powerlog") {
    PowerLogParams pl;
    pl.p = j.at("p").get<double>();
    pl.alpha = j.value("alpha", 0.0);
    pl.p0 = j.value("p0", pl.p);
    pl.alpha0 = j.value("alpha0", 0.0);
    return power_log(pl);
  }
  if (form == "tabulated") {
    std::vector<std::pair<double, double>> knots;
    for (const auto& row : j.at("knots")) {
      const double t = row.at(0).get<double>();
      double a;
      if (row.at(1).is_string())
        a = kInf;
      else
        a = row.at(1).get<double>();
      knots.emplace_back(t, a);
    }
    return tabulated(std::move(knots));
  }
  throw std::invalid_argument("YoungFunction::from_json: unknown form " + form);
}

}  // namespace orlicz
