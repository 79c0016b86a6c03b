#include "khavinson/gegenbauer.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace khavinson {

namespace {

void require_unit_interval(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw std::domain_error("Gegenbauer argument outside [-1, 1]: " + std::to_string(x));
  }
}

}  // namespace

GegenbauerIndex::GegenbauerIndex(double lambda, int degree) : lambda_(lambda), degree_(degree) {
  if (!(lambda > -0.5)) {
    throw std::domain_error("Gegenbauer parameter must exceed -1/2, got " + std::to_string(lambda));
  }
  if (degree < 0) {
    throw std::domain_error("Gegenbauer degree must be nonnegative, got " + std::to_string(degree));
  }
}

DimensionParams::DimensionParams(int n) : n_(n) {
  if (n < 3) {
    throw std::domain_error("dimension must be at least 3, got " + std::to_string(n));
  }
  c_n_ = 2.0 * std::exp(log_gamma(0.5 * (n + 2)) - log_gamma(0.5) - log_gamma(0.5 * (n - 1)));
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma needs a positive argument, got " + std::to_string(x));
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double pochhammer(double lambda, int k) {
  if (k < 0) {
    throw std::domain_error("pochhammer: negative k");
  }
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result *= lambda + i;
  }
  if (!std::isfinite(result)) {
    throw std::overflow_error("pochhammer(" + std::to_string(lambda) + ", " + std::to_string(k) +
                              ") overflows");
  }
  return result;
}

double endpoint_value(double lambda, int k) {
  // (2 lambda)_k / k! accumulated as a product of ratios to stay in range.
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result *= (2.0 * lambda + i) / (i + 1);
  }
  return result;
}

double eval_explicit(const GegenbauerIndex& idx, double x) {
  require_unit_interval(x);
  using Quad = boost::multiprecision::cpp_bin_float_quad;
  const int k = idx.degree();
  const Quad lambda = idx.lambda();
  const Quad two_x = Quad(2) * x;
  // The alternating sum cancels by up to ~10 digits at k = 30, |x| near 1,
  // so it is accumulated in 113-bit precision.
  Quad sum = 0;
  for (int j = 0; 2 * j <= k; ++j) {
    Quad term = 1;
    for (int i = 0; i < k - j; ++i) term *= lambda + i;
    for (int i = 2; i <= j; ++i) term /= i;
    for (int i = 2; i <= k - 2 * j; ++i) term /= i;
    for (int i = 0; i < k - 2 * j; ++i) term *= two_x;
    sum += (j % 2 == 0) ? term : Quad(-term);
  }
  const double result = sum.convert_to<double>();
  if (!std::isfinite(result)) {
    throw std::overflow_error("eval_explicit overflows for degree " + std::to_string(k));
  }
  return result;
}

double gegenbauer(double lambda, int k, double x) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * x;
  for (int m = 2; m <= k; ++m) {
    const double next = (2.0 * (m + lambda - 1.0) * x * cur - (m + 2.0 * lambda - 2.0) * prev) / m;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_recurrence(const GegenbauerIndex& idx, double x) {
  require_unit_interval(x);
  return gegenbauer(idx.lambda(), idx.degree(), x);
}

void eval_sequence_into(double lambda, double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * lambda * x;
  for (std::size_t m = 2; m < out.size(); ++m) {
    const double md = static_cast<double>(m);
    out[m] = (2.0 * (md + lambda - 1.0) * x * out[m - 1] - (md + 2.0 * lambda - 2.0) * out[m - 2]) / md;
  }
}

std::vector<double> eval_sequence(double lambda, int K, double x) {
  if (K < 0) {
    throw std::domain_error("eval_sequence: negative K");
  }
  std::vector<double> values(static_cast<std::size_t>(K) + 1);
  eval_sequence_into(lambda, x, values);
  return values;
}

double derivative(const GegenbauerIndex& idx, int order, double x) {
  if (order < 0) {
    throw std::domain_error("derivative order must be nonnegative");
  }
  if (order > idx.degree()) return 0.0;
  return std::ldexp(pochhammer(idx.lambda(), order), order) *
         gegenbauer(idx.lambda() + order, idx.degree() - order, x);
}

double legendre(int k, double x) {
  return gegenbauer(0.5, k, x);
}

double assoc_legendre(int k, int j, double x) {
  if (j < 0 || j > k) {
    throw std::domain_error("assoc_legendre needs 0 <= j <= k");
  }
  if (j == 0) return legendre(k, x);
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("assoc_legendre needs |x| < 1");
  }
  const double dj = derivative(GegenbauerIndex(0.5, k), j, x);
  const double value = std::pow(1.0 - x * x, 0.5 * j) * dj;
  return (j % 2 == 0) ? value : -value;
}

}  // namespace khavinson
