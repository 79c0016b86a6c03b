#pragma once

// Gauss-Legendre quadrature on [-1, 1] mapped to arbitrary intervals, with
// explicit splitting at known kinks and an adaptive fallback. Integrands with
// a fractional power of sin at 0 or pi go through tanh-sinh instead.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "khavinson/errors.hpp"

namespace khavinson {

// N-point Gauss-Legendre rule: nodes strictly increasing and symmetric about
// 0, positive weights summing to 2, exact for polynomials of degree 2N-1.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr int kDefaultQuadratureOrder = 128;
inline constexpr int kMaxQuadratureOrder = 4096;

// Newton iteration on P_N seeded with Chebyshev-like estimates. Throws
// std::domain_error for N outside [1, 4096], NumericalError if Newton stalls.
QuadratureRule gauss_legendre(int N);

// Shared immutable rule of kDefaultQuadratureOrder points.
const QuadratureRule& default_rule();

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class F>
double integrate(F&& f, double a, double b, const QuadratureRule& rule) {
  if (!(a < b)) {
    throw std::invalid_argument("integrate: need a < b");
  }
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  CompensatedSum sum;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = mid + half * nodes[i];
    const double fx = f(x);
    if (!std::isfinite(fx)) throw NonFiniteValue(x);
    sum.add(weights[i] * fx);
  }
  return half * sum.value();
}

// Integrates each smooth piece separately. Breakpoints must be sorted and lie
// strictly inside (a, b).
template <class F>
double integrate_split(F&& f, double a, double b, std::span<const double> breakpoints,
                       const QuadratureRule& rule) {
  if (!(a < b)) {
    throw std::invalid_argument("integrate_split: need a < b");
  }
  double left = a;
  double total = 0.0;
  for (double bp : breakpoints) {
    if (!(bp > left && bp < b)) {
      throw std::invalid_argument("integrate_split: breakpoints must be sorted and inside (a, b)");
    }
    total += integrate(f, left, bp, rule);
    left = bp;
  }
  return total + integrate(f, left, b, rule);
}

template <class F>
double integrate_split(F&& f, double a, double b, std::initializer_list<double> breakpoints,
                       const QuadratureRule& rule) {
  return integrate_split(std::forward<F>(f), a, b,
                         std::span<const double>(breakpoints.begin(), breakpoints.size()), rule);
}

namespace detail {

// Embedded pair used by integrate_adaptive: (coarse, fine) with the fine
// rule having twice the points of the coarse one.
const std::pair<QuadratureRule, QuadratureRule>& adaptive_pair();

inline constexpr int kAdaptiveMaxDepth = 40;

}  // namespace detail

struct AdaptiveEstimate {
  double value = 0.0;
  double error = 0.0;
};

// Recursive bisection with an N / 2N Gauss pair. Each interval is accepted
// once the two rules agree to within its share of tol; intervals still
// unresolved at depth 40 are accepted as-is and counted toward the error,
// and ToleranceNotMet is thrown if the accumulated error exceeds tol.
template <class F>
AdaptiveEstimate integrate_adaptive_estimate(F&& f, double a, double b, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("integrate_adaptive: tol must be positive");
  }
  if (!(a < b)) {
    throw std::invalid_argument("integrate_adaptive: need a < b");
  }
  const auto& [coarse, fine] = detail::adaptive_pair();
  struct Segment {
    double a, b, tol;
    int depth;
  };
  std::vector<Segment> stack{{a, b, tol, 0}};
  CompensatedSum value;
  double error = 0.0;
  bool exhausted = false;
  while (!stack.empty()) {
    const Segment seg = stack.back();
    stack.pop_back();
    const double lo = integrate(f, seg.a, seg.b, coarse);
    const double hi = integrate(f, seg.a, seg.b, fine);
    const double diff = std::abs(hi - lo);
    if (diff <= seg.tol || seg.depth >= detail::kAdaptiveMaxDepth) {
      if (diff > seg.tol) exhausted = true;
      value.add(hi);
      error += diff;
      continue;
    }
    const double mid = 0.5 * (seg.a + seg.b);
    stack.push_back({mid, seg.b, 0.5 * seg.tol, seg.depth + 1});
    stack.push_back({seg.a, mid, 0.5 * seg.tol, seg.depth + 1});
  }
  if (exhausted && error > tol) {
    throw ToleranceNotMet(value.value(), error);
  }
  return {value.value(), error};
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol) {
  return integrate_adaptive_estimate(std::forward<F>(f), a, b, tol).value;
}

namespace detail {

// Relative termination target for tanh-sinh.
inline constexpr double kTanhSinhTol = 1e-15;

inline bool is_whole(double beta) { return beta >= 0.0 && beta == std::floor(beta); }

}  // namespace detail

// int_lo^hi g(psi) sin(psi)^beta dpsi for 0 <= lo < hi <= pi and beta > -1,
// split at the breakpoints. For integer beta the integrand is as smooth as g
// and the Gauss rule is used. Otherwise each piece is folded into [0, pi/2]
// (psi -> pi - psi past pi/2, so sin is always evaluated near 0 where it is
// accurate) and integrated by tanh-sinh, which absorbs the endpoint power.
template <class G>
double integrate_sine_power(G&& g, double beta, double lo, double hi, std::span<const double> breakpoints,
                            const QuadratureRule& rule) {
  constexpr double pi = std::numbers::pi;
  if (!(beta > -1.0)) {
    throw std::domain_error("integrate_sine_power: beta must exceed -1");
  }
  if (!(0.0 <= lo && lo < hi && hi <= pi)) {
    throw std::invalid_argument("integrate_sine_power: need 0 <= lo < hi <= pi");
  }
  if (detail::is_whole(beta)) {
    const int m = static_cast<int>(beta);
    auto f = [&](double psi) {
      double w = 1.0;
      const double s = std::sin(psi);
      for (int i = 0; i < m; ++i) w *= s;
      return g(psi) * w;
    };
    return integrate_split(f, lo, hi, breakpoints, rule);
  }

  std::vector<double> cuts{lo};
  for (double p : breakpoints) {
    if (!(p > cuts.back() && p < hi)) {
      throw std::invalid_argument("integrate_sine_power: breakpoints must be sorted and inside (lo, hi)");
    }
    cuts.push_back(p);
  }
  cuts.push_back(hi);

  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  CompensatedSum total;
  auto piece = [&](double a, double b, bool reflected) {
    if (!(a < b)) return;
    auto f = [&](double u) {
      const double v = reflected ? g(pi - u) : g(u);
      const double value = v * std::pow(std::sin(u), beta);
      if (!std::isfinite(value)) throw NonFiniteValue(reflected ? pi - u : u);
      return value;
    };
    total.add(ts.integrate(f, a, b, detail::kTanhSinhTol));
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= pi / 2) {
      piece(a, b, false);
    } else if (a >= pi / 2) {
      piece(pi - b, pi - a, true);
    } else {
      piece(a, pi / 2, false);
      piece(pi - b, pi / 2, true);
    }
  }
  return total.value();
}

template <class G>
double integrate_sine_power(G&& g, double beta, double lo, double hi, const QuadratureRule& rule) {
  return integrate_sine_power(std::forward<G>(g), beta, lo, hi, std::span<const double>{}, rule);
}

}  // namespace khavinson
