#include "khavinson/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "khavinson/parallel.hpp"

namespace khavinson {

namespace {

constexpr double kPi = std::numbers::pi;

void require_radius(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::domain_error("radius rho must lie in [0, 1), got " + std::to_string(rho));
  }
}

// sum_{k=0}^{K} k!/(2 lambda)_k C_k^lambda(x) C_k^lambda(y) rho^k
double paired_series(double lambda, double x, double y, double rho, std::size_t K) {
  std::vector<double> cx(K + 1), cy(K + 1);
  eval_sequence_into(lambda, x, cx);
  eval_sequence_into(lambda, y, cy);
  CompensatedSum sum;
  double coef = 1.0;
  double rho_k = 1.0;
  for (std::size_t k = 0; k <= K; ++k) {
    if (k > 0) {
      coef *= static_cast<double>(k) / (2.0 * lambda + static_cast<double>(k) - 1.0);
      rho_k *= rho;
    }
    sum.add(coef * cx[k] * cy[k] * rho_k);
  }
  return sum.value();
}

// int_{-1}^{1} |s - x| (1-x^2)^{(n-3)/2} x^power dx with x = cos(phi), split
// at the kink.
double kink_moment(double s, int n, int power, const QuadratureRule& rule) {
  auto integrand = [&](double phi) {
    const double x = std::cos(phi);
    const double base = std::abs(s - x) * std::pow(std::sin(phi), n - 2);
    return power == 0 ? base : base * x;
  };
  return integrate_split(integrand, 0.0, kPi, {std::acos(s)}, rule);
}

double half_integer_power(double base, int twice_exponent) {
  return std::pow(base, 0.5 * twice_exponent);
}

}  // namespace

RadialSlice::RadialSlice(int n, double rho)
    : dim_(n), rho_(rho), delta_((n - 2.0) / n * rho) {
  require_radius(rho);
}

ConstantQuery::ConstantQuery(int n, double rho, double alpha)
    : slice_(n, rho), alpha_(alpha), t_(std::cos(alpha)) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw std::domain_error("direction angle alpha must lie in [0, pi], got " + std::to_string(alpha));
  }
}

KernelPoint::KernelPoint(double t, double z, double delta) : t_(t), z_(z), delta_(delta) {
  // (1 - delta^2 t^2)(1 - t^2) - (z - delta t^2)^2, the same polynomial as
  // the defining discriminant but free of cancellation near the boundary.
  const double shift = z - delta * t * t;
  disc_ = (1.0 - delta * delta * t * t) * (1.0 - t * t) - shift * shift;
  in_omega_ = std::abs(t) < 1.0 && std::abs(z) < 1.0 && disc_ > 0.0;
}

double constant_at_origin(const DimensionParams& dim) {
  return 2.0 * dim.c_n() / (dim.n() - 1.0);
}

double inner_integral_direct(const ConstantQuery& q, double x, const QuadratureRule& rule) {
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("inner integral needs |x| < 1");
  }
  const int n = q.n();
  const double rho = q.rho();
  const double w = std::sqrt(1.0 - x * x);
  const double a = x * std::cos(q.alpha());
  const double b = w * std::sin(q.alpha());
  const double power = 0.5 * n - 1.0;
  auto integrand = [&](double psi) {
    const double den = 1.0 + rho * rho - 2.0 * rho * (a + b * std::cos(psi));
    return std::pow(std::sin(psi), n - 3) / std::pow(den, power);
  };
  return half_integer_power(1.0 - x * x, n - 3) * integrate(integrand, 0.0, kPi, rule);
}

double inner_integral_series(const ConstantQuery& q, double x, const SeriesControl& ctl) {
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("inner integral needs |x| < 1");
  }
  const int n = q.n();
  const double lambda = q.dim().lambda_low();
  const double beta = std::exp(log_gamma(0.5) + log_gamma(0.5 * (n - 2)) - log_gamma(0.5 * (n - 1)));
  const double weight = beta * half_integer_power(1.0 - x * x, n - 3);
  if (q.rho() == 0.0) return weight;
  const std::size_t K = truncation_order(lambda, q.rho(), ctl);
  return weight * paired_series(lambda, x, q.t(), q.rho(), K);
}

double constant_melen(const ConstantQuery& q, const QuadratureRule& rule) {
  const int n = q.n();
  const double rho = q.rho();
  const double kink = q.delta() * q.t();
  auto integrand = [&](double phi) {
    const double x = std::cos(phi);
    return std::abs(kink - x) * inner_integral_direct(q, x, rule) * std::sin(phi);
  };
  const double outer = integrate_split(integrand, 0.0, kPi, {std::acos(kink)}, rule);
  return n * (n - 2.0) / (2.0 * kPi) / (1.0 - rho * rho) * outer;
}

double constant_radial(int n, double rho, const QuadratureRule& rule) {
  const RadialSlice slice(n, rho);
  const double delta = slice.delta();
  auto integrand = [&](double phi) {
    const double x = std::cos(phi);
    return std::abs(x - delta) * std::pow(std::sin(phi), n - 2) /
           half_integer_power(1.0 - 2.0 * x * rho + rho * rho, n - 2);
  };
  const double integral = integrate_split(integrand, 0.0, kPi, {std::acos(delta)}, rule);
  return slice.dim().c_n() / (1.0 - rho * rho) * integral;
}

std::size_t h_series_order(const RadialSlice& slice, const SeriesControl& ctl) {
  return truncation_order(slice.dim().lambda_low(), slice.rho(), ctl);
}

std::size_t second_derivative_order(const RadialSlice& slice, const SeriesControl& ctl) {
  // The bound grows with lambda, so the (n+2)/2 series is the longest.
  return truncation_order(slice.dim().lambda_high(), slice.rho(), ctl);
}

FGHValues fgh(double t, const RadialSlice& slice, const SeriesControl& ctl, const QuadratureRule& rule) {
  if (!(std::abs(t) <= 1.0)) {
    throw std::domain_error("fgh needs t in [-1, 1]");
  }
  const int n = slice.n();
  const double rho = slice.rho();
  const double delta = slice.delta();
  const double s = delta * t;

  FGHValues out;
  out.F = kink_moment(s, n, 0, rule);
  out.G = (n - 2.0) * rho * t * kink_moment(s, n, 1, rule);
  if (rho == 0.0) return out;

  const std::size_t K = h_series_order(slice, ctl);
  std::vector<double> c_high(K - 1), c_low(K + 1);
  eval_sequence_into(slice.dim().lambda_high(), s, c_high);
  eval_sequence_into(slice.dim().lambda_low(), t, c_low);
  CompensatedSum sum;
  double coef = 1.0;  // (k-2)! / (n+2)_{k-2}
  double rho_k = rho * rho;
  for (std::size_t k = 2; k <= K; ++k) {
    const std::size_t m = k - 2;
    if (m > 0) {
      coef *= static_cast<double>(m) / (n + 2.0 + static_cast<double>(m) - 1.0);
      rho_k *= rho;
    }
    sum.add(coef * c_high[m] * c_low[k] * rho_k);
  }
  out.H = 2.0 / (n * n - 1.0) * half_integer_power(1.0 - s * s, n + 1) * sum.value();
  return out;
}

double constant_series(const ConstantQuery& q, const SeriesControl& ctl, const QuadratureRule& rule) {
  if (q.rho() == 0.0) return constant_at_origin(q.dim());
  const double rho = q.rho();
  return q.dim().c_n() / (1.0 - rho * rho) * fgh(q.t(), q.slice(), ctl, rule).sum();
}

double second_derivative_series(double t, const RadialSlice& slice, const SeriesControl& ctl) {
  if (!(std::abs(t) < 1.0)) {
    throw std::domain_error("second derivative needs |t| < 1");
  }
  const double rho = slice.rho();
  if (rho == 0.0) return 0.0;
  const int n = slice.n();
  const double delta = slice.delta();
  const double s = delta * t;
  const double u = 1.0 - s * s;
  const DimensionParams& dim = slice.dim();

  auto series = [&](double lambda) {
    return paired_series(lambda, s, t, rho, truncation_order(lambda, rho, ctl));
  };
  const double d2 = delta * delta;
  const double low = 2.0 * d2 * half_integer_power(u, n - 3) * series(dim.lambda_low());
  const double mid = 4.0 * n * d2 / (n - 1.0) * half_integer_power(u, n - 1) * series(dim.lambda_mid());
  const double high = 2.0 * n * n * n * d2 / ((n + 1.0) * (n - 1.0) * (n - 2.0)) *
                      half_integer_power(u, n + 1) * series(dim.lambda_high());
  return low - mid + high;
}

double l_bracket_expanded(double A, double B, int n) {
  const double r = n / (n - 2.0);
  return A * A - 2.0 * r * A * B + r * r * B * B;
}

double l_bracket_square(double A, double B, int n) {
  const double d = A - n / (n - 2.0) * B;
  return d * d;
}

double l_kernel(const KernelPoint& p, int n, double rho) {
  if (!p.in_omega()) return 0.0;
  const double t = p.t();
  const double z = p.z();
  const double D = p.discriminant();
  const double P = 1.0 - 2.0 * rho * z + rho * rho;
  const double v = 1.0 - t * t;
  const double prefactor =
      2.0 * std::exp(log_gamma(0.5 * (n - 1)) - log_gamma(0.5 * (n - 2)) - log_gamma(0.5));
  return prefactor * half_integer_power(D, n - 4) /
         (half_integer_power(P, n + 2) * half_integer_power(v, n + 1)) * l_bracket_square(P * v, D, n);
}

double second_derivative_kernel(double t, const RadialSlice& slice, const QuadratureRule& rule) {
  if (!(std::abs(t) < 1.0)) {
    throw std::domain_error("second derivative needs |t| < 1");
  }
  const double rho = slice.rho();
  if (rho == 0.0) return 0.0;
  const double delta = slice.delta();
  const int n = slice.n();
  const double centre = delta * t * t;
  const double r = std::sqrt((1.0 - delta * delta * t * t) * (1.0 - t * t));
  auto integrand = [&](double theta) {
    const double z = centre + r * std::cos(theta);
    return l_kernel(KernelPoint(t, z, delta), n, rho) * r * std::sin(theta);
  };
  return delta * delta * integrate(integrand, 0.0, kPi, rule);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n_points) {
  if (n_points == 0) return {};
  if (n_points == 1) return {lo};
  std::vector<double> grid(n_points);
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

ConvexityReport certify_convexity(int n, double rho, std::size_t grid_size, const SeriesControl& ctl,
                                  const QuadratureRule& rule, double edge) {
  if (grid_size < 3) {
    throw std::invalid_argument("certify_convexity: grid_size must be at least 3");
  }
  if (!(edge > 0.0 && edge < 1.0)) {
    throw std::invalid_argument("certify_convexity: grid edge must lie in (0, 1)");
  }
  const RadialSlice slice(n, rho);
  const SeriesControl used = widened(ctl, slice.dim().lambda_high(), rho);

  ConvexityReport report;
  report.n = n;
  report.rho = rho;
  report.grid_size = grid_size;
  report.quad_order = rule.order();
  report.series_terms = rho == 0.0 ? 0 : second_derivative_order(slice, used);

  const std::vector<double> ts = uniform_grid(-edge, edge, grid_size);
  std::vector<double> series(grid_size), gap(grid_size, 0.0);
  parallel_for(grid_size, [&](std::size_t i) {
    series[i] = second_derivative_series(ts[i], slice, used);
    if (std::abs(ts[i]) <= kDefaultTGridEdge) {
      gap[i] = std::abs(series[i] - second_derivative_kernel(ts[i], slice, rule));
    }
  });

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < grid_size; ++i) {
    if (series[i] < series[argmin]) argmin = i;
  }
  report.min_value = series[argmin];
  report.argmin_t = ts[argmin];
  report.max_cross_route = *std::max_element(gap.begin(), gap.end());
  report.pass = report.min_value >= kConvexityThreshold;
  return report;
}

RadialMaxReport certify_radial_max(int n, double rho, std::span<const double> alpha_grid,
                                   const SeriesControl& ctl, const QuadratureRule& rule) {
  if (alpha_grid.size() < 2) {
    throw std::invalid_argument("certify_radial_max: alpha grid needs at least two points");
  }
  if (std::abs(alpha_grid.front()) > 1e-12 || std::abs(alpha_grid.back() - kPi) > 1e-12 ||
      !std::is_sorted(alpha_grid.begin(), alpha_grid.end())) {
    throw std::invalid_argument("certify_radial_max: alpha grid must ascend from 0 to pi");
  }
  const RadialSlice slice(n, rho);
  const SeriesControl used = widened(ctl, slice.dim().lambda_low(), rho);

  RadialMaxReport report;
  report.n = n;
  report.rho = rho;
  report.alphas.assign(alpha_grid.begin(), alpha_grid.end());
  report.values.resize(alpha_grid.size());
  report.quad_order = rule.order();
  report.series_terms = rho == 0.0 ? 0 : h_series_order(slice, used);

  parallel_for(alpha_grid.size(), [&](std::size_t i) {
    const double alpha = std::clamp(alpha_grid[i], 0.0, kPi);
    report.values[i] = constant_series(ConstantQuery(n, rho, alpha), used, rule);
  });

  report.grid_max = *std::max_element(report.values.begin(), report.values.end());
  const double tie = RadialMaxReport::kTieTolerance * std::max(1.0, std::abs(report.grid_max));
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    if (report.values[i] >= report.grid_max - tie) report.argmax.push_back(i);
  }
  report.value_at_zero = report.values.front();
  report.margin = report.value_at_zero - report.grid_max;
  report.radial_value = constant_radial(n, rho, rule);

  const std::size_t last = report.values.size() - 1;
  const bool starts_at_zero = report.argmax.front() == 0;
  const bool endpoints_only = std::all_of(report.argmax.begin(), report.argmax.end(),
                                          [&](std::size_t i) { return i == 0 || i == last; });
  report.pass = report.margin >= kRadialMaxMargin && starts_at_zero && (rho == 0.0 || endpoints_only);
  return report;
}

}  // namespace khavinson
