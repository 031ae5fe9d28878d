#include "orlicz/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace orlicz {

namespace {

// Nodes/weights for 15-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 15> kGaussNodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};

constexpr std::array<double, 15> kGaussWeights = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

double segment(const ScalarFn& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += kGaussWeights[i] * f(mid + half * kGaussNodes[i]);
  return acc * half;
}

struct AdaptState {
  const ScalarFn* f;
  double rel_tol;
  double scale;
  double err;
  bool converged;
};

double adapt(AdaptState& st, double a, double b, double whole, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = segment(*st.f, a, mid);
  const double right = segment(*st.f, mid, b);
  const double diff = std::abs(left + right - whole);
  if (diff <= st.rel_tol * std::max(st.scale, std::abs(left + right)) || depth <= 0) {
    if (depth <= 0 && diff > st.rel_tol * std::max(st.scale, 1e-300)) st.converged = false;
    st.err += diff;
    return left + right;
  }
  return adapt(st, a, mid, left, depth - 1) + adapt(st, mid, b, right, depth - 1);
}

// Tail of a segment-contribution sequence c_k. Geometric decay gets a
// geometric-series tail; slower decay is modelled as c_k ~ C k^-kappa.
struct TailModel {
  double tail = 0.0;
  double err = 0.0;
  bool ok = true;
};

TailModel estimate_tail(const std::vector<double>& contrib) {
  TailModel m;
  const size_t k = contrib.size();
  if (k < 4) {
    m.ok = false;
    return m;
  }
  const double c1 = contrib[k - 3], c2 = contrib[k - 2], c3 = contrib[k - 1];
  if (c3 <= 0.0) return m;  // nothing left
  const double r1 = c2 > 0 ? c3 / c2 : 0.0;
  const double r2 = c1 > 0 ? c2 / c1 : 0.0;
  const double rho = std::max(r1, r2);
  if (rho < 0.95) {
    m.tail = c3 * rho / (1.0 - rho);
    m.err = m.tail;
    return m;
  }
  if (rho >= 1.0) {
    m.ok = false;  // growing contributions: divergent endpoint
    return m;
  }
  // Slow decay: fit c_k ~ C k^-kappa on the last few segments.
  const double kappa = std::log(c2 / c3) / std::log(double(k) / double(k - 1));
  if (kappa <= 1.05) {
    m.ok = false;
    return m;
  }
  m.tail = c3 * double(k) / (kappa - 1.0);
  m.err = m.tail;
  return m;
}

QuadResult geometric_sum(const ScalarFn& f, double anchor, bool toward_zero,
                         double rel_tol) {
  QuadResult out;
  std::vector<double> contrib;
  double acc = 0.0;
  double err = 0.0;
  double hi = anchor;
  const int max_seg = 4096;
  for (int k = 0; k < max_seg; ++k) {
    double a, b;
    if (toward_zero) {
      a = hi * 0.5;
      b = hi;
      hi = a;
    } else {
      a = hi;
      b = hi * 2.0;
      hi = b;
    }
    if (!toward_zero && b > 1e300) break;
    const double c = segment(f, a, b);
    if (!std::isfinite(c)) {
      out.converged = false;
      out.value = acc;
      return out;
    }
    contrib.push_back(std::abs(c));
    acc += c;
    err += 1e-14 * std::abs(c);
    if (k > 6 && std::abs(c) < rel_tol * std::max(std::abs(acc), 1e-300)) {
      // Two consecutive negligible segments close the loop.
      if (contrib[k - 1] < rel_tol * std::max(std::abs(acc), 1e-300)) {
        out.value = acc;
        out.error = err + std::abs(c);
        return out;
      }
    }
  }
  const TailModel tm = estimate_tail(contrib);
  out.value = acc + tm.tail;
  out.error = err + tm.err;
  out.converged = tm.ok;
  return out;
}

}  // namespace

double gauss15(const ScalarFn& f, double a, double b) { return segment(f, a, b); }

QuadResult integrate_adaptive(const ScalarFn& f, double a, double b, double rel_tol,
                              int max_depth) {
  QuadResult out;
  if (!(b > a)) return out;
  const double whole = segment(f, a, b);
  AdaptState st{&f, rel_tol, std::abs(whole), 0.0, true};
  out.value = adapt(st, a, b, whole, max_depth);
  out.error = st.err;
  out.converged = st.converged;
  return out;
}

QuadResult integrate_to_zero(const ScalarFn& f, double b, double rel_tol) {
  QuadResult out;
  if (!(b > 0.0)) return out;
  return geometric_sum(f, b, /*toward_zero=*/true, rel_tol);
}

QuadResult integrate_to_infinity(const ScalarFn& f, double a, double rel_tol) {
  QuadResult out;
  if (!(a > 0.0)) a = std::numeric_limits<double>::min();
  return geometric_sum(f, a, /*toward_zero=*/false, rel_tol);
}

PowerLogFit fit_power_log(const std::vector<double>& t, const std::vector<double>& g) {
  // Least squares for [1, log t, log(1+|log t|)] against log g.
  double S[3][3] = {{0}};
  double rhs[3] = {0};
  std::vector<std::array<double, 4>> rows;
  for (size_t i = 0; i < t.size() && i < g.size(); ++i) {
    if (!(t[i] > 0.0) || !(g[i] > 0.0)) continue;
    const double lt = std::log(t[i]);
    const double y = std::log(g[i]);
    if (!std::isfinite(lt) || !std::isfinite(y)) continue;
    const double basis[3] = {1.0, lt, std::log1p(std::abs(lt))};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += basis[r] * y;
      for (int c = 0; c < 3; ++c) S[r][c] += basis[r] * basis[c];
    }
    rows.push_back({basis[0], basis[1], basis[2], y});
  }
  PowerLogFit fit;
  if (rows.size() < 3) {
    fit.residual = std::numeric_limits<double>::infinity();
    return fit;
  }
  // Solve the 3x3 normal equations by Gaussian elimination with pivoting.
  double M[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) M[r][c] = S[r][c];
    M[r][3] = rhs[r];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    if (std::abs(M[col][col]) < 1e-300) {
      fit.residual = std::numeric_limits<double>::infinity();
      return fit;
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double fac = M[r][col] / M[col][col];
      for (int c = col; c < 4; ++c) M[r][c] -= fac * M[col][c];
    }
  }
  fit.offset = M[0][3] / M[0][0];
  fit.beta = M[1][3] / M[1][1];
  fit.kappa = M[2][3] / M[2][2];
  double res = 0.0;
  for (const auto& row : rows) {
    const double pred = fit.offset * row[0] + fit.beta * row[1] + fit.kappa * row[2];
    res = std::max(res, std::abs(pred - row[3]));
  }
  fit.residual = res;
  return fit;
}

TailVerdict classify_tail(const PowerLogFit& fit, bool at_zero, double margin) {
  if (!std::isfinite(fit.residual)) return TailVerdict::indeterminate;
  const double beta = fit.beta;
  if (at_zero) {
    // \int_0 t^beta (1+|log t|)^kappa dt: converges iff beta > -1, or
    // beta == -1 with kappa < -1 (log factor decaying fast enough).
    if (beta > -1.0 + margin) return TailVerdict::convergent;
    if (beta < -1.0 - margin) return TailVerdict::divergent;
    if (fit.kappa < -1.0 - margin) return TailVerdict::convergent;
    if (fit.kappa > -1.0 + margin) return TailVerdict::divergent;
    return TailVerdict::indeterminate;
  }
  // \int^\infty t^beta (1+log t)^kappa dt: diverges iff beta > -1, or
  // beta == -1 with kappa >= -1.
  if (beta > -1.0 + margin) return TailVerdict::divergent;
  if (beta < -1.0 - margin) return TailVerdict::convergent;
  if (fit.kappa > -1.0 + margin) return TailVerdict::divergent;
  if (fit.kappa < -1.0 - margin) return TailVerdict::convergent;
  return TailVerdict::indeterminate;
}

}  // namespace orlicz
