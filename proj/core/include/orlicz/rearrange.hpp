#ifndef ORLICZ_REARRANGE_HPP
#define ORLICZ_REARRANGE_HPP

#include <string>
#include <vector>

namespace orlicz {

/// A measurable function sampled on a uniform grid. Supported domains:
///   interval (a,b)          one-dimensional, nx cells
///   box (ax,bx)x(ay,by)     two-dimensional, nx*ny cells, row-major
///   halfline (0,L)          measure-variable grid, proxy for large domains
///   radial2d                equal-measure annuli centred at the origin
struct GridFunction {
  enum class Domain { interval, box, halfline, radial2d };

  Domain kind = Domain::interval;
  double ax = 0, bx = 0, ay = 0, by = 0;
  int nx = 0, ny = 1;
  int dim = 1;
  double cell_measure = 0;
  std::vector<double> values;

  static GridFunction on_interval(double a, double b, std::vector<double> values);
  static GridFunction on_halfline(double L, std::vector<double> values);
  static GridFunction on_box(double ax, double bx, double ay, double by, int nx, int ny,
                             std::vector<double> values);
  static GridFunction radial(double total_measure, std::vector<double> annulus_values);

  /// chi_(0,a) sampled on (0, L) with n cells.
  static GridFunction chi(double a, double L, int n);

  double measure() const { return double(values.size()) * cell_measure; }
  std::size_t cells() const { return values.size(); }

  double center_x(int i) const;
  double center_y(int j) const;

  /// Point evaluation (piecewise constant); x outside the domain yields 0.
  double eval1(double x) const;
  double eval2(double x, double y) const;

  std::string to_csv() const;
  std::string to_json_header() const;
};

/// Non-increasing, right-continuous profile on (0, L) over uniform measure
/// segments; `averaged` marks profiles holding exact running-average samples
/// at segment right endpoints rather than step values.
struct RearrangedProfile {
  std::vector<double> values;
  double segment_measure = 0;
  bool averaged = false;

  double total_measure() const { return double(values.size()) * segment_measure; }

  /// Step evaluation: value on [k*m, (k+1)*m).
  double operator()(double r) const;
};

/// Sorts |u| into its decreasing rearrangement u*.
RearrangedProfile decreasing_rearrangement(const GridFunction& u);

/// u**(r) = (1/r) int_0^r u*, evaluated exactly at segment right endpoints.
RearrangedProfile maximal_average(const RearrangedProfile& p);

/// Exact value of u** at an arbitrary r > 0 for a step profile.
double maximal_average_at(const RearrangedProfile& p, double r);

/// Radially non-increasing rearrangement u*(omega_n |x|^n); n = 1 yields a
/// symmetric interval grid, n = 2 an equal-measure radial grid.
GridFunction symmetric_rearrangement(const GridFunction& u, int n);

/// (E_lambda f)(t) = f(t/lambda) for t/lambda <= L, else 0; exact on grids.
GridFunction dilate(const GridFunction& f, double lambda);

/// Exact int_0^{min(L_u, L_v)} u* v* dr for step profiles.
double profile_product_integral(const RearrangedProfile& u, const RearrangedProfile& v);

/// Lebesgue measure of the unit ball in dimension n (n = 1, 2 supported).
double unit_ball_measure(int n);

}  // namespace orlicz

#endif
