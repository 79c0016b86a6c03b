#include "khavinson/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "khavinson/gegenbauer.hpp"

namespace khavinson {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFiniteDifferenceStep = 1e-5;

// Gamma(lambda + 1/2) / (Gamma(lambda) Gamma(1/2)), lambda > 0.
double kernel_normalization(double lambda) {
  return std::exp(log_gamma(lambda + 0.5) - log_gamma(lambda) - log_gamma(0.5));
}

// |diff| / max(|ref|, floor): the scaled residual used by the suite, so that
// "scaled <= tol" means "|diff| <= max(tol |ref|, tol floor)".
double scaled_residual(double lhs, double rhs, double floor) {
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), floor);
}

}  // namespace

KernelParams::KernelParams(double lambda, double x, double y) : lambda_(lambda), x_(x), y_(y) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("KernelParams: lambda must be positive");
  }
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0)) {
    throw std::domain_error("KernelParams: x and y must lie in (-1, 1)");
  }
}

std::pair<double, double> KernelParams::support() const {
  const double r = std::sqrt((1.0 - x_ * x_) * (1.0 - y_ * y_));
  return {x_ * y_ - r, x_ * y_ + r};
}

AdditionCoefficient addition_coefficient(double lambda, int k, int j) {
  if (!(lambda > 0.5)) {
    throw std::domain_error("addition coefficient needs lambda > 1/2 (use the Legendre form at 1/2)");
  }
  if (j < 0 || j > k) {
    throw std::domain_error("addition coefficient needs 0 <= j <= k");
  }
  const double log_value = log_gamma(2.0 * lambda - 1.0) - 2.0 * log_gamma(lambda) +
                           2.0 * j * std::log(2.0) + log_gamma(k - j + 1.0) +
                           2.0 * log_gamma(lambda + j) - log_gamma(k + 2.0 * lambda + j);
  return {lambda, k, j, std::exp(log_value) * (2.0 * lambda + 2.0 * j - 1.0)};
}

double orthogonality_norm(double lambda, int k) {
  // Gamma(1/2) Gamma(lambda+1/2) / Gamma(lambda) is negative for lambda in
  // (-1/2, 0); handle the sign of Gamma(lambda) explicitly.
  const double gamma_ratio = std::sqrt(kPi) * std::tgamma(lambda + 0.5) / std::tgamma(lambda);
  return gamma_ratio * endpoint_value(lambda, k) / (k + lambda);
}

double orthogonality_integral(double lambda, int k, int l, const QuadratureRule& rule) {
  if (!(lambda > -0.5) || lambda == 0.0) {
    throw std::domain_error("orthogonality needs lambda > -1/2 and lambda != 0");
  }
  auto g = [&](double psi) {
    const double c = std::cos(psi);
    return gegenbauer(lambda, k, c) * gegenbauer(lambda, l, c);
  };
  return integrate_sine_power(g, 2.0 * lambda, 0.0, kPi, rule);
}

double addition_theorem_rhs(double lambda, int k, double theta, double phi, double psi) {
  if (!(lambda > 0.5)) {
    throw std::domain_error("addition theorem needs lambda > 1/2; use legendre_addition_rhs at 1/2");
  }
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double cpsi = std::cos(psi);
  double sum = 0.0;
  double sin_power = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double coef = addition_coefficient(lambda, k, j).value;
    sum += coef * sin_power * gegenbauer(lambda + j, k - j, ct) * gegenbauer(lambda + j, k - j, cp) *
           gegenbauer(lambda - 0.5, j, cpsi);
    sin_power *= st * sp;
  }
  return sum;
}

double legendre_addition_rhs(int k, double theta, double phi, double psi) {
  const double ct = std::cos(theta);
  const double cp = std::cos(phi);
  double sum = legendre(k, ct) * legendre(k, cp);
  // (k-j)!/(k+j)! updated as j increases.
  double ratio = 1.0;
  for (int j = 1; j <= k; ++j) {
    ratio /= static_cast<double>(k + j) * (k - j + 1);
    sum += 2.0 * ratio * assoc_legendre(k, j, ct) * assoc_legendre(k, j, cp) * std::cos(j * psi);
  }
  return sum;
}

IdentitySides product_formula_check(double lambda, int k, double phi, double psi,
                                    const QuadratureRule& rule) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("product formula needs lambda > 0");
  }
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double cq = std::cos(psi), sq = std::sin(psi);
  const double lhs = gegenbauer(lambda, k, cp) * gegenbauer(lambda, k, cq);
  auto g = [&](double theta) { return gegenbauer(lambda, k, cp * cq + sp * sq * std::cos(theta)); };
  const double rhs = kernel_normalization(lambda) * endpoint_value(lambda, k) *
                     integrate_sine_power(g, 2.0 * lambda - 1.0, 0.0, kPi, rule);
  return {lhs, rhs};
}

double kernel_K(const KernelParams& params, double z) {
  const double x = params.x(), y = params.y();
  const double lambda = params.lambda();
  if (!(std::abs(z) < 1.0)) return 0.0;
  const double wx = 1.0 - x * x;
  const double wy = 1.0 - y * y;
  // 1 - x^2 - y^2 - z^2 + 2xyz written as (1-x^2)(1-y^2) - (z-xy)^2.
  const double shift = z - x * y;
  const double disc = wx * wy - shift * shift;
  if (!(disc > 0.0)) return 0.0;
  return kernel_normalization(lambda) * std::pow(disc, lambda - 1.0) / std::pow(wx * wy, lambda - 0.5);
}

IdentitySides kernel_product_check(const KernelParams& params, int k, const QuadratureRule& rule) {
  const double x = params.x(), y = params.y();
  const double lambda = params.lambda();
  const double lhs = gegenbauer(lambda, k, x) * gegenbauer(lambda, k, y);
  const double r = std::sqrt((1.0 - x * x) * (1.0 - y * y));
  // With z = xy + r cos(theta) the discriminant is r^2 sin^2(theta), so
  // K dz = norm * sin(theta)^{2 lambda - 1} dtheta exactly; evaluating K
  // itself near the ends would lose the discriminant to cancellation.
  auto g = [&](double theta) { return gegenbauer(lambda, k, x * y + r * std::cos(theta)); };
  const double rhs = kernel_normalization(lambda) * endpoint_value(lambda, k) *
                     integrate_sine_power(g, 2.0 * lambda - 1.0, 0.0, kPi, rule);
  return {lhs, rhs};
}

IdentitySides weighted_derivative_check(double lambda, int k, double x) {
  if (lambda == 1.0) {
    throw std::domain_error("weighted derivative identity excludes lambda = 1");
  }
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("weighted derivative identity needs |x| < 1");
  }
  auto weighted = [&](double u) { return std::pow(1.0 - u * u, lambda - 0.5) * gegenbauer(lambda, k, u); };
  const double h = kFiniteDifferenceStep;
  const double lhs = (weighted(x + h) - weighted(x - h)) / (2.0 * h);
  const double rhs = -((k + 1.0) * (k + 2.0 * lambda - 1.0) / (2.0 * (lambda - 1.0))) *
                     std::pow(1.0 - x * x, lambda - 1.5) * gegenbauer(lambda - 1.0, k + 1, x);
  return {lhs, rhs};
}

double kink_integral_closed(double lambda, int k, double s) {
  if (k < 2) {
    throw std::domain_error("kink integral closed form holds for k >= 2");
  }
  if (!(lambda > -0.5) || !(std::abs(s) < 1.0)) {
    throw std::domain_error("kink integral needs lambda > -1/2 and |s| < 1");
  }
  const double kd = k;
  const double coef = 8.0 * lambda * (lambda + 1.0) /
                      (kd * (kd - 1.0) * (kd + 2.0 * lambda) * (kd + 2.0 * lambda + 1.0));
  return coef * std::pow(1.0 - s * s, lambda + 1.5) * gegenbauer(lambda + 2.0, k - 2, s);
}

double kink_integral_brute(double lambda, int k, double s, const QuadratureRule& rule) {
  if (k < 2) {
    throw std::domain_error("kink integral is compared for k >= 2");
  }
  if (!(lambda > -0.5) || !(std::abs(s) < 1.0)) {
    throw std::domain_error("kink integral needs lambda > -1/2 and |s| < 1");
  }
  auto g = [&](double psi) {
    const double c = std::cos(psi);
    return std::abs(c - s) * gegenbauer(lambda, k, c);
  };
  const double cut = std::acos(s);
  return integrate_sine_power(g, 2.0 * lambda, 0.0, kPi, std::span<const double>(&cut, 1), rule);
}

std::string to_string(IdentityCheck check) {
  switch (check) {
    case IdentityCheck::kOrthogonality: return "orthogonality";
    case IdentityCheck::kAddition: return "addition";
    case IdentityCheck::kLegendreAddition: return "legendre-addition";
    case IdentityCheck::kProduct: return "product";
    case IdentityCheck::kKernelProduct: return "kernel-product";
    case IdentityCheck::kWeightedDerivative: return "weighted-derivative";
    case IdentityCheck::kKink: return "kink";
  }
  return "unknown";
}

IdentityCheck parse_identity_check(const std::string& name) {
  for (IdentityCheck c : all_identity_checks()) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown identity check '" + name + "'");
}

std::vector<IdentityCheck> all_identity_checks() {
  return {IdentityCheck::kOrthogonality, IdentityCheck::kAddition,
          IdentityCheck::kLegendreAddition, IdentityCheck::kProduct,
          IdentityCheck::kKernelProduct, IdentityCheck::kWeightedDerivative,
          IdentityCheck::kKink};
}

bool IdentityReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass; });
}

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kIdentityFloor = 1e-3;  // 1e-12 absolute floor at 1e-9 relative
constexpr double kOrthogonalOffDiagonalTol = 1e-12;
constexpr double kOrthogonalDiagonalTol = 1e-10;
constexpr double kDerivativeTol = 1e-6;

class Accumulator {
 public:
  Accumulator(IdentityCheck check, std::string route, double lambda, double tol, double floor)
      : result_{check, std::move(route), lambda, 0.0, 0.0, tol, 0, true}, floor_(floor) {}

  void add(double lhs, double rhs) {
    result_.max_abs = std::max(result_.max_abs, std::abs(lhs - rhs));
    result_.max_scaled = std::max(result_.max_scaled, scaled_residual(lhs, rhs, floor_));
    ++result_.evaluations;
  }

  IdentityResult finish() {
    result_.pass = result_.max_scaled <= result_.tolerance;
    return result_;
  }

 private:
  IdentityResult result_;
  double floor_;
};

bool near_one(double lambda) { return lambda > 0.9 && lambda < 1.1; }

}  // namespace

IdentityReport run_identity_suite(const IdentitySuiteConfig& config, const QuadratureRule& rule) {
  if (config.max_degree < 0 || config.samples < 1) {
    throw std::invalid_argument("identity suite needs max_degree >= 0 and samples >= 1");
  }
  IdentityReport report;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::uniform_real_distribution<double> point(-0.99, 0.99);
  std::uniform_real_distribution<double> inner(-0.9, 0.9);
  const int K = config.max_degree;

  for (IdentityCheck check : config.checks) {
    if (check == IdentityCheck::kLegendreAddition) {
      Accumulator acc(check, "legendre-addition", 0.5, kIdentityTol, kIdentityFloor);
      for (int k = 0; k <= K; ++k) {
        for (int s = 0; s < config.samples; ++s) {
          const double th = angle(rng), ph = angle(rng), ps = angle(rng);
          const double lhs = legendre(k, std::cos(th) * std::cos(ph) + std::sin(th) * std::sin(ph) * std::cos(ps));
          acc.add(lhs, legendre_addition_rhs(k, th, ph, ps));
        }
      }
      report.results.push_back(acc.finish());
      continue;
    }
    for (double lambda : config.lambdas) {
      switch (check) {
        case IdentityCheck::kOrthogonality: {
          if (!(lambda > -0.5) || lambda == 0.0) {
            throw std::domain_error("orthogonality needs lambda > -1/2, lambda != 0");
          }
          // Off-diagonal entries are exactly zero, so the residual is absolute.
          Accumulator off(check, "off-diagonal", lambda, kOrthogonalOffDiagonalTol, 1.0);
          Accumulator diag(check, "diagonal", lambda, kOrthogonalDiagonalTol, 0.0);
          for (int k = 0; k <= K; ++k) {
            for (int l = k; l <= K; ++l) {
              const double value = orthogonality_integral(lambda, k, l, rule);
              if (k == l) {
                diag.add(value, orthogonality_norm(lambda, k));
              } else {
                off.add(value, 0.0);
              }
            }
          }
          report.results.push_back(off.finish());
          report.results.push_back(diag.finish());
          break;
        }
        case IdentityCheck::kAddition: {
          const bool legendre_route = lambda == 0.5;
          if (!legendre_route && !(lambda > 0.5)) {
            throw std::domain_error("addition theorem needs lambda > 1/2 or lambda = 1/2 (Legendre)");
          }
          Accumulator acc(check, legendre_route ? "legendre-addition" : "gegenbauer-addition", lambda,
                          kIdentityTol, kIdentityFloor);
          for (int k = 0; k <= K; ++k) {
            for (int s = 0; s < config.samples; ++s) {
              const double th = angle(rng), ph = angle(rng), ps = angle(rng);
              const double arg = std::cos(th) * std::cos(ph) + std::sin(th) * std::sin(ph) * std::cos(ps);
              const double rhs = legendre_route ? legendre_addition_rhs(k, th, ph, ps)
                                                : addition_theorem_rhs(lambda, k, th, ph, ps);
              acc.add(gegenbauer(lambda, k, arg), rhs);
            }
          }
          report.results.push_back(acc.finish());
          break;
        }
        case IdentityCheck::kProduct: {
          Accumulator acc(check, "product-formula", lambda, kIdentityTol, kIdentityFloor);
          for (int k = 0; k <= K; ++k) {
            for (int s = 0; s < config.samples; ++s) {
              const auto sides = product_formula_check(lambda, k, angle(rng), angle(rng), rule);
              acc.add(sides.lhs, sides.rhs);
            }
          }
          report.results.push_back(acc.finish());
          break;
        }
        case IdentityCheck::kKernelProduct: {
          Accumulator acc(check, "kernel-product", lambda, kIdentityTol, kIdentityFloor);
          for (int k = 0; k <= K; ++k) {
            for (int s = 0; s < config.samples; ++s) {
              const KernelParams params(lambda, point(rng), point(rng));
              const auto sides = kernel_product_check(params, k, rule);
              acc.add(sides.lhs, sides.rhs);
            }
          }
          report.results.push_back(acc.finish());
          break;
        }
        case IdentityCheck::kWeightedDerivative: {
          if (near_one(lambda)) {
            if (config.strict_domain) {
              throw std::domain_error("weighted derivative identity excludes lambda = 1");
            }
            break;
          }
          Accumulator acc(check, "finite-difference", lambda, kDerivativeTol, 1.0);
          for (int k = 0; k <= K; ++k) {
            for (int s = 0; s < config.samples; ++s) {
              const auto sides = weighted_derivative_check(lambda, k, inner(rng));
              acc.add(sides.lhs, sides.rhs);
            }
          }
          report.results.push_back(acc.finish());
          break;
        }
        case IdentityCheck::kKink: {
          Accumulator acc(check, "split-quadrature", lambda, kIdentityTol, kIdentityFloor);
          for (int k = 2; k <= std::max(K, 2); ++k) {
            for (int s = 0; s < config.samples; ++s) {
              const double sv = inner(rng);
              acc.add(kink_integral_brute(lambda, k, sv, rule), kink_integral_closed(lambda, k, sv));
            }
          }
          report.results.push_back(acc.finish());
          break;
        }
        case IdentityCheck::kLegendreAddition:
          break;
      }
    }
  }
  return report;
}

}  // namespace khavinson
