#include "orlicz/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace orlicz {

double unit_ball_measure(int n) {
  if (n == 1) return 2.0;
  if (n == 2) return std::numbers::pi;
  throw std::invalid_argument("unit_ball_measure: only n = 1, 2 supported");
}

GridFunction GridFunction::on_interval(double a, double b, std::vector<double> values) {
  if (!(b > a) || values.empty())
    throw std::invalid_argument("GridFunction::on_interval: bad domain or no cells");
  GridFunction g;
  g.kind = Domain::interval;
  g.ax = a;
  g.bx = b;
  g.nx = int(values.size());
  g.dim = 1;
  g.cell_measure = (b - a) / double(values.size());
  g.values = std::move(values);
  return g;
}

GridFunction GridFunction::on_halfline(double L, std::vector<double> values) {
  GridFunction g = on_interval(0.0, L, std::move(values));
  g.kind = Domain::halfline;
  return g;
}

GridFunction GridFunction::on_box(double ax, double bx, double ay, double by, int nx,
                                  int ny, std::vector<double> values) {
  if (!(bx > ax) || !(by > ay) || nx <= 0 || ny <= 0 ||
      values.size() != std::size_t(nx) * std::size_t(ny))
    throw std::invalid_argument("GridFunction::on_box: inconsistent grid");
  GridFunction g;
  g.kind = Domain::box;
  g.ax = ax;
  g.bx = bx;
  g.ay = ay;
  g.by = by;
  g.nx = nx;
  g.ny = ny;
  g.dim = 2;
  g.cell_measure = (bx - ax) * (by - ay) / (double(nx) * double(ny));
  g.values = std::move(values);
  return g;
}

GridFunction GridFunction::radial(double total_measure, std::vector<double> values) {
  if (!(total_measure > 0) || values.empty())
    throw std::invalid_argument("GridFunction::radial: bad measure or no cells");
  GridFunction g;
  g.kind = Domain::radial2d;
  g.dim = 2;
  g.nx = int(values.size());
  g.cell_measure = total_measure / double(values.size());
  g.bx = std::sqrt(total_measure / std::numbers::pi);  // outer radius
  g.values = std::move(values);
  return g;
}

GridFunction GridFunction::chi(double a, double L, int n) {
  std::vector<double> v(n, 0.0);
  const double h = L / n;
  for (int i = 0; i < n; ++i)
    if ((i + 0.5) * h < a) v[i] = 1.0;
  return on_interval(0.0, L, std::move(v));
}

double GridFunction::center_x(int i) const {
  if (kind == Domain::box) return ax + (i + 0.5) * (bx - ax) / nx;
  return ax + (i + 0.5) * (bx - ax) / nx;
}

double GridFunction::center_y(int j) const {
  return ay + (j + 0.5) * (by - ay) / ny;
}

double GridFunction::eval1(double x) const {
  if (kind != Domain::interval && kind != Domain::halfline)
    throw std::logic_error("GridFunction::eval1: not a 1-D grid");
  if (x < ax || x >= bx) return 0.0;
  const int i = std::min(int((x - ax) / (bx - ax) * nx), nx - 1);
  return values[i];
}

double GridFunction::eval2(double x, double y) const {
  if (kind == Domain::box) {
    if (x < ax || x >= bx || y < ay || y >= by) return 0.0;
    const int i = std::min(int((x - ax) / (bx - ax) * nx), nx - 1);
    const int j = std::min(int((y - ay) / (by - ay) * ny), ny - 1);
    return values[std::size_t(j) * nx + i];
  }
  if (kind == Domain::radial2d) {
    const double m = std::numbers::pi * (x * x + y * y);
    const std::size_t k = std::size_t(m / cell_measure);
    return k < values.size() ? values[k] : 0.0;
  }
  throw std::logic_error("GridFunction::eval2: not a 2-D grid");
}

std::string GridFunction::to_csv() const {
  std::ostringstream os;
  char buf[64];
  if (dim == 1) {
    os << "cell,x,value\n";
    for (int i = 0; i < nx; ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, center_x(i), values[i]);
      os << buf;
    }
  } else if (kind == Domain::box) {
    os << "cell,x,y,value\n";
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", j * nx + i, center_x(i),
                      center_y(j), values[std::size_t(j) * nx + i]);
        os << buf;
      }
  } else {
    os << "annulus,measure_hi,value\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, (k + 1) * cell_measure,
                    values[k]);
      os << buf;
    }
  }
  return os.str();
}

std::string GridFunction::to_json_header() const {
  std::ostringstream os;
  os << "{\"domain\":";
  switch (kind) {
    case Domain::interval:
      os << "{\"kind\":\"interval\",\"a\":" << ax << ",\"b\":" << bx << "}";
      break;
    case Domain::halfline:
      os << "{\"kind\":\"halfline\",\"L\":" << bx << "}";
      break;
    case Domain::box:
      os << "{\"kind\":\"box\",\"ax\":" << ax << ",\"bx\":" << bx << ",\"ay\":" << ay
         << ",\"by\":" << by << "}";
      break;
    case Domain::radial2d:
      os << "{\"kind\":\"radial2d\",\"measure\":" << measure() << "}";
      break;
  }
  os << ",\"cell_measure\":" << cell_measure << ",\"cells\":" << values.size() << "}";
  return os.str();
}

double RearrangedProfile::operator()(double r) const {
  if (r < 0) return values.empty() ? 0.0 : values.front();
  const std::size_t k = std::size_t(r / segment_measure);
  return k < values.size() ? values[k] : 0.0;
}

RearrangedProfile decreasing_rearrangement(const GridFunction& u) {
  RearrangedProfile p;
  p.segment_measure = u.cell_measure;
  p.values.reserve(u.values.size());
  for (double v : u.values) p.values.push_back(std::abs(v));
  std::stable_sort(p.values.begin(), p.values.end(), std::greater<double>());
  return p;
}

RearrangedProfile maximal_average(const RearrangedProfile& p) {
  RearrangedProfile out;
  out.segment_measure = p.segment_measure;
  out.averaged = true;
  out.values.reserve(p.values.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    acc += p.values[k] * p.segment_measure;
    out.values.push_back(acc / ((k + 1) * p.segment_measure));
  }
  return out;
}

double maximal_average_at(const RearrangedProfile& p, double r) {
  if (!(r > 0)) throw std::domain_error("maximal_average_at: r must be positive");
  double acc = 0.0;
  const double m = p.segment_measure;
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    const double lo = k * m, hi = (k + 1) * m;
    if (lo >= r) break;
    acc += p.values[k] * (std::min(hi, r) - lo);
  }
  return acc / r;
}

GridFunction symmetric_rearrangement(const GridFunction& u, int n) {
  const RearrangedProfile p = decreasing_rearrangement(u);
  if (n == 1) {
    // Two half-cells per profile segment, mirrored about the origin.
    const std::size_t N = p.values.size();
    std::vector<double> vals(2 * N);
    for (std::size_t k = 0; k < N; ++k) {
      vals[N + k] = p.values[k];
      vals[N - 1 - k] = p.values[k];
    }
    const double half = p.total_measure() / 2.0;
    return GridFunction::on_interval(-half, half, std::move(vals));
  }
  if (n == 2) return GridFunction::radial(p.total_measure(), p.values);
  throw std::invalid_argument("symmetric_rearrangement: n must be 1 or 2");
}

GridFunction dilate(const GridFunction& f, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("dilate: lambda must be positive");
  if (f.dim != 1) throw std::invalid_argument("dilate: 1-D grids only");
  GridFunction g = f;
  g.ax = f.ax * lambda;
  g.bx = f.bx * lambda;
  g.cell_measure = f.cell_measure * lambda;
  return g;
}

double profile_product_integral(const RearrangedProfile& u, const RearrangedProfile& v) {
  // Common refinement of two uniform step grids.
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  double pos = 0.0;
  const double Lu = u.total_measure(), Lv = v.total_measure();
  const double end = std::min(Lu, Lv);
  while (pos < end && i < u.values.size() && j < v.values.size()) {
    const double next_u = (i + 1) * u.segment_measure;
    const double next_v = (j + 1) * v.segment_measure;
    const double next = std::min({next_u, next_v, end});
    acc += u.values[i] * v.values[j] * (next - pos);
    pos = next;
    if (next == next_u) ++i;
    if (next == next_v) ++j;
  }
  return acc;
}

}  // namespace orlicz
