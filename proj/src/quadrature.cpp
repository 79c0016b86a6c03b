#include "khavinson/quadrature.hpp"

#include <numbers>
#include <string>

namespace khavinson {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw std::invalid_argument("QuadratureRule: nodes and weights must be nonempty and equal length");
  }
}

namespace {

// P_N(x) and P_N'(x) by the Bonnet recurrence.
std::pair<double, double> legendre_with_derivative(int N, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= N; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = N * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int N) {
  if (N < 1 || N > kMaxQuadratureOrder) {
    throw std::domain_error("gauss_legendre: order must be in [1, 4096], got " + std::to_string(N));
  }
  std::vector<double> nodes(N);
  std::vector<double> weights(N);
  if (N == 1) {
    nodes[0] = 0.0;
    weights[0] = 2.0;
    return QuadratureRule(std::move(nodes), std::move(weights));
  }
  const int half = (N + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root, seeded by cos(pi (i + 3/4) / (N + 1/2)).
    double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_with_derivative(N, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("gauss_legendre: Newton iteration did not converge for N = " +
                           std::to_string(N));
    }
    dp = legendre_with_derivative(N, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[N - 1 - i] = x;
    nodes[i] = -x;
    weights[N - 1 - i] = w;
    weights[i] = w;
  }
  if (N % 2 == 1) nodes[N / 2] = 0.0;
  return QuadratureRule(std::move(nodes), std::move(weights));
}

const QuadratureRule& default_rule() {
  static const QuadratureRule rule = gauss_legendre(kDefaultQuadratureOrder);
  return rule;
}

namespace detail {

const std::pair<QuadratureRule, QuadratureRule>& adaptive_pair() {
  static const std::pair<QuadratureRule, QuadratureRule> pair{gauss_legendre(10), gauss_legendre(20)};
  return pair;
}

}  // namespace detail

}  // namespace khavinson
