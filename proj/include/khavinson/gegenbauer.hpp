#pragma once

// Gegenbauer (ultraspherical) polynomials C_k^lambda, Legendre polynomials,
// associated Legendre functions and the Gamma-function helpers they need.

#include <span>
#include <vector>

namespace khavinson {

// Identifies C_k^lambda. The explicit power-sum representation is valid for
// lambda > -1/2; the constructor enforces that range and k >= 0.
class GegenbauerIndex {
 public:
  GegenbauerIndex(double lambda, int degree);

  double lambda() const noexcept { return lambda_; }
  int degree() const noexcept { return degree_; }

 private:
  double lambda_;
  int degree_;
};

// Dimension-dependent parameters of the ball B^n. The three Gegenbauer
// parameters (n-2)/2, n/2 and (n+2)/2 appear throughout the constant
// formulas; c_n = 2 Gamma((n+2)/2) / (Gamma(1/2) Gamma((n-1)/2)).
class DimensionParams {
 public:
  explicit DimensionParams(int n);

  int n() const noexcept { return n_; }
  double lambda_low() const noexcept { return 0.5 * (n_ - 2); }
  double lambda_mid() const noexcept { return 0.5 * n_; }
  double lambda_high() const noexcept { return 0.5 * (n_ + 2); }
  double c_n() const noexcept { return c_n_; }

 private:
  int n_;
  double c_n_;
};

// log Gamma(x) for x > 0. Reentrant (does not touch signgam).
double log_gamma(double x);

// Rising factorial (lambda)_k. Throws std::overflow_error when the product
// leaves the double range.
double pochhammer(double lambda, int k);

// C_k^lambda(1) = (2 lambda)_k / k!.
double endpoint_value(double lambda, int k);

// Explicit finite sum; kept as an independent oracle for the recurrence.
double eval_explicit(const GegenbauerIndex& idx, double x);

// Three-term recurrence, the default evaluator. Requires |x| <= 1.
double eval_recurrence(const GegenbauerIndex& idx, double x);

// Unchecked recurrence evaluation. Accepts any real lambda (the generating
// function defines C_k^lambda for every lambda) and any real x; used where
// the parameter leaves the range of GegenbauerIndex, e.g. C_{k+1}^{lambda-1}.
double gegenbauer(double lambda, int k, double x);

// [C_0^lambda(x), ..., C_K^lambda(x)] in one recurrence pass.
std::vector<double> eval_sequence(double lambda, int K, double x);

// Same as eval_sequence, writing out.size() values into out.
void eval_sequence_into(double lambda, double x, std::span<double> out);

// d^m/dx^m C_k^lambda(x) = 2^m (lambda)_m C_{k-m}^{lambda+m}(x); zero for m > k.
double derivative(const GegenbauerIndex& idx, int order, double x);

// P_k(x) = C_k^{1/2}(x).
double legendre(int k, double x);

// P_k^j(x) = (-1)^j (1-x^2)^{j/2} d^j/dx^j P_k(x), |x| < 1, 0 <= j <= k.
double assoc_legendre(int k, int j, double x);

}  // namespace khavinson
