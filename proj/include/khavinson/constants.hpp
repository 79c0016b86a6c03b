#pragma once

// Sharp constants C(rho e_1, l_alpha) for the directional derivative of
// bounded harmonic functions on the unit ball of R^n, computed three ways:
//
//   constant_melen   double integral (outer x, inner y) with a kink at x = delta t
//   constant_series  (c_n / (1 - rho^2)) [F(t) + G(t) + H(t)], t = cos(alpha),
//                    with H a Gegenbauer power series in rho
//   constant_radial  closed one-dimensional integral for alpha = 0
//
// plus the second derivative of F + G + H by a series route and a kernel
// route, the kernel L(t, z) on Omega, and the two certification sweeps
// (convexity of F + G + H in t, maximality of alpha = 0).
//
// delta = (n-2)/n * rho throughout.

#include <cstddef>
#include <span>
#include <vector>

#include "khavinson/gegenbauer.hpp"
#include "khavinson/quadrature.hpp"
#include "khavinson/series.hpp"

namespace khavinson {

// Dimension n and radius rho with the derived shrink factor delta.
class RadialSlice {
 public:
  RadialSlice(int n, double rho);

  const DimensionParams& dim() const noexcept { return dim_; }
  int n() const noexcept { return dim_.n(); }
  double rho() const noexcept { return rho_; }
  double delta() const noexcept { return delta_; }

 private:
  DimensionParams dim_;
  double rho_;
  double delta_;
};

// Selects C(rho e_1, l_alpha); 0 <= rho < 1, 0 <= alpha <= pi.
class ConstantQuery {
 public:
  ConstantQuery(int n, double rho, double alpha);

  const RadialSlice& slice() const noexcept { return slice_; }
  const DimensionParams& dim() const noexcept { return slice_.dim(); }
  int n() const noexcept { return slice_.n(); }
  double rho() const noexcept { return slice_.rho(); }
  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return slice_.delta(); }
  double t() const noexcept { return t_; }

 private:
  RadialSlice slice_;
  double alpha_;
  double t_;
};

// A point (t, z) tagged with membership in
//   Omega = {1 - delta^2 t^2 - t^2 - z^2 + 2 delta t^2 z > 0, |t|, |z| < 1}.
class KernelPoint {
 public:
  KernelPoint(double t, double z, double delta);

  double t() const noexcept { return t_; }
  double z() const noexcept { return z_; }
  double delta() const noexcept { return delta_; }
  // 1 - delta^2 t^2 - t^2 - z^2 + 2 delta t^2 z
  double discriminant() const noexcept { return disc_; }
  bool in_omega() const noexcept { return in_omega_; }

 private:
  double t_;
  double z_;
  double delta_;
  double disc_;
  bool in_omega_;
};

// C(0) = 2 c_n / (n - 1), the value at the centre of the ball.
double constant_at_origin(const DimensionParams& dim);

// Inner y-integral at fixed x, |x| < 1, via y = sqrt(1-x^2) cos(psi).
double inner_integral_direct(const ConstantQuery& q, double x, const QuadratureRule& rule);

// Same integral from its Gegenbauer expansion in rho.
double inner_integral_series(const ConstantQuery& q, double x, const SeriesControl& ctl);

double constant_melen(const ConstantQuery& q, const QuadratureRule& rule);
double constant_series(const ConstantQuery& q, const SeriesControl& ctl, const QuadratureRule& rule);
double constant_radial(int n, double rho, const QuadratureRule& rule);

struct FGHValues {
  double F = 0.0;
  double G = 0.0;
  double H = 0.0;

  double sum() const noexcept { return F + G + H; }
};

// F, G and H at t in [-1, 1].
FGHValues fgh(double t, const RadialSlice& slice, const SeriesControl& ctl, const QuadratureRule& rule);

// Truncation order needed for the H series and for the second-derivative
// series (the largest of the three) at this slice.
std::size_t h_series_order(const RadialSlice& slice, const SeriesControl& ctl);
std::size_t second_derivative_order(const RadialSlice& slice, const SeriesControl& ctl);

// (F + G + H)''(t) as three Gegenbauer series, -1 < t < 1.
double second_derivative_series(double t, const RadialSlice& slice, const SeriesControl& ctl);

// (F + G + H)''(t) = delta^2 * int L(t, z) dz over the support of
// K_lambda(delta t, t, .), -1 < t < 1. Intended for |t| <= 0.999.
double second_derivative_kernel(double t, const RadialSlice& slice, const QuadratureRule& rule);

// L(t, z) in its factored (perfect-square) form; zero outside Omega.
double l_kernel(const KernelPoint& p, int n, double rho);

// The bracket of L written out, A^2 - 2n/(n-2) A B + n^2/(n-2)^2 B^2, and
// the same quantity as (A - n B/(n-2))^2.
double l_bracket_expanded(double A, double B, int n);
double l_bracket_square(double A, double B, int n);

inline constexpr double kConvexityThreshold = -1e-12;
inline constexpr double kRadialMaxMargin = -1e-12;
inline constexpr double kDefaultTGridEdge = 0.999;

struct ConvexityReport {
  int n = 0;
  double rho = 0.0;
  std::size_t grid_size = 0;
  double min_value = 0.0;
  double argmin_t = 0.0;
  // max |series - kernel| over grid points with |t| <= 0.999
  double max_cross_route = 0.0;
  std::size_t series_terms = 0;
  int quad_order = 0;
  bool pass = false;
};

// Evaluates the series second derivative on `grid_size` uniform points of
// [-edge, edge] and compares against the kernel route. The series control is
// widened as needed (see widened()).
ConvexityReport certify_convexity(int n, double rho, std::size_t grid_size, const SeriesControl& ctl,
                                  const QuadratureRule& rule, double edge = kDefaultTGridEdge);

struct RadialMaxReport {
  int n = 0;
  double rho = 0.0;
  std::vector<double> alphas;
  std::vector<double> values;
  // grid indices within kTieTolerance of the maximum, ascending
  std::vector<std::size_t> argmax;
  double value_at_zero = 0.0;
  double grid_max = 0.0;
  // C(rho e_1, l_0) - max over the grid
  double margin = 0.0;
  double radial_value = 0.0;
  std::size_t series_terms = 0;
  int quad_order = 0;
  // argmax is {0} or {0, pi} (or everything, for rho = 0), and margin >= -1e-12
  bool pass = false;

  static constexpr double kTieTolerance = 1e-12;
};

// alpha_grid must be ascending, start at 0 and end at pi.
RadialMaxReport certify_radial_max(int n, double rho, std::span<const double> alpha_grid,
                                   const SeriesControl& ctl, const QuadratureRule& rule);

// n_points uniformly spaced values from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n_points);

}  // namespace khavinson
