#pragma once

// Numerical oracles for the Gegenbauer identities: orthogonality, the
// addition and product theorems, the product-formula kernel K_lambda, the
// weighted derivative identity, the kink integral, and the Legendre addition
// theorem. Each check returns both sides so callers choose the tolerance.

#include <string>
#include <utility>
#include <vector>

#include "khavinson/quadrature.hpp"

namespace khavinson {

// Arguments of K_lambda(x, y, .): lambda > 0 and x, y in (-1, 1).
class KernelParams {
 public:
  KernelParams(double lambda, double x, double y);

  double lambda() const noexcept { return lambda_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  // The support of z -> K_lambda(x, y, z): xy -+ sqrt((1-x^2)(1-y^2)).
  std::pair<double, double> support() const;

 private:
  double lambda_;
  double x_;
  double y_;
};

// Coefficient of the j-th term in Gegenbauer's addition theorem,
//   Gamma(2l-1)/Gamma(l)^2 * 4^j Gamma(k-j+1) Gamma(l+j)^2 (2l+2j-1) / Gamma(k+2l+j),
// evaluated through log-Gamma. Defined for lambda > 1/2 only.
struct AdditionCoefficient {
  double lambda;
  int k;
  int j;
  double value;
};

AdditionCoefficient addition_coefficient(double lambda, int k, int j);

// Both sides of an identity at one sample point.
struct IdentitySides {
  double lhs;
  double rhs;
};

// Gamma(1/2) Gamma(lambda+1/2) (2 lambda)_k / (Gamma(lambda) (k+lambda) k!).
double orthogonality_norm(double lambda, int k);

// int_{-1}^{1} C_k C_l (1-x^2)^{lambda-1/2} dx, computed as
// int_0^pi C_k(cos p) C_l(cos p) sin^{2 lambda} p dp.
double orthogonality_integral(double lambda, int k, int l, const QuadratureRule& rule);

// Right side of the addition theorem; lambda > 1/2 (std::domain_error otherwise).
double addition_theorem_rhs(double lambda, int k, double theta, double phi, double psi);

// Right side of the Legendre addition theorem (the lambda = 1/2 case).
double legendre_addition_rhs(int k, double theta, double phi, double psi);

// (C_k(cos phi) C_k(cos psi), Gegenbauer product-formula integral); lambda > 0.
IdentitySides product_formula_check(double lambda, int k, double phi, double psi,
                                    const QuadratureRule& rule);

// K_lambda(x, y, z); zero outside the support.
double kernel_K(const KernelParams& params, double z);

// (C_k(x) C_k(y), (2 lambda)_k / k! * int C_k(z) K_lambda(x, y, z) dz). The
// z-integral runs over the support with z = xy + r cos(theta).
IdentitySides kernel_product_check(const KernelParams& params, int k, const QuadratureRule& rule);

// (central difference of (1-x^2)^{lambda-1/2} C_k(x), closed form from the
// Rodrigues formula). lambda != 1 (std::domain_error), |x| < 1.
IdentitySides weighted_derivative_check(double lambda, int k, double x);

// int_{-1}^{1} |x-s| (1-x^2)^{lambda-1/2} C_k(x) dx, k >= 2.
double kink_integral_closed(double lambda, int k, double s);
double kink_integral_brute(double lambda, int k, double s, const QuadratureRule& rule);

// Which identity family to run in run_identity_suite.
enum class IdentityCheck {
  kOrthogonality,
  kAddition,
  kLegendreAddition,
  kProduct,
  kKernelProduct,
  kWeightedDerivative,
  kKink,
};

std::string to_string(IdentityCheck check);
IdentityCheck parse_identity_check(const std::string& name);
std::vector<IdentityCheck> all_identity_checks();

struct IdentitySuiteConfig {
  std::vector<double> lambdas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  int max_degree = 12;
  int samples = 20;
  unsigned long long seed = 20200101ULL;
  std::vector<IdentityCheck> checks = all_identity_checks();
  // When false, lambdas excluded by an identity's hypotheses are skipped for
  // that identity; when true they raise std::domain_error.
  bool strict_domain = false;
};

struct IdentityResult {
  IdentityCheck check;
  // Route actually used; "legendre-addition" when the addition check is run
  // at lambda = 1/2.
  std::string route;
  double lambda;
  // max |lhs - rhs|
  double max_abs;
  // max |lhs - rhs| / max(|rhs|, floor); compared against tolerance
  double max_scaled;
  double tolerance;
  int evaluations;
  bool pass;
};

struct IdentityReport {
  std::vector<IdentityResult> results;
  bool pass() const;
};

// Runs every requested identity for every lambda. Throws std::domain_error
// for combinations excluded by the identity's hypotheses (lambda = 1 for the
// weighted derivative, lambda <= 0 for the product/kernel formulas).
IdentityReport run_identity_suite(const IdentitySuiteConfig& config, const QuadratureRule& rule);

}  // namespace khavinson
