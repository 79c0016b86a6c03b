#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "khavinson/quadrature.hpp"

using namespace khavinson;

namespace {

constexpr double kPi = std::numbers::pi;

// int_{-1}^{1} x^p dx
double monomial_moment(int p) { return p % 2 ? 0.0 : 2.0 / (p + 1); }

}  // namespace

TEST_CASE("gauss_legendre small rules") {
  const auto one = gauss_legendre(1);
  REQUIRE(one.order() == 1);
  CHECK(one.nodes()[0] == 0.0);
  CHECK(one.weights()[0] == 2.0);

  const auto two = gauss_legendre(2);
  CHECK(two.nodes()[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes()[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights()[1] == doctest::Approx(1.0).epsilon(1e-15));

  const double x8 = integrate([](double x) { return std::pow(x, 8); }, -1.0, 1.0, gauss_legendre(5));
  CHECK(std::abs(x8 - 2.0 / 9.0) < 1e-12);

  CHECK_THROWS_AS(gauss_legendre(0), std::domain_error);
  CHECK_THROWS_AS(gauss_legendre(4097), std::domain_error);
}

TEST_CASE("rule invariants: symmetry, positivity, mass, exactness") {
  for (int N : {1, 2, 3, 4, 5, 7, 10, 16, 31, 64, 128, 200, 512, 1024, 4096}) {
    CAPTURE(N);
    const auto rule = gauss_legendre(N);
    const auto x = rule.nodes();
    const auto w = rule.weights();
    double mass = 0.0;
    for (int i = 0; i < N; ++i) {
      CHECK(w[i] > 0.0);
      CHECK(x[i] > -1.0);
      CHECK(x[i] < 1.0);
      if (i > 0) CHECK(x[i] > x[i - 1]);
      CHECK(x[i] == -x[N - 1 - i]);
      mass += w[i];
    }
    CHECK(std::abs(mass - 2.0) < 1e-13);

    // Exactness is checked on the degrees that can be resolved in double.
    const int top = std::min(2 * N - 1, 200);
    for (int p = 0; p <= top; ++p) {
      const double got = integrate([p](double t) { return std::pow(t, p); }, -1.0, 1.0, rule);
      CHECK(std::abs(got - monomial_moment(p)) <= 1e-12);
    }
  }
}

TEST_CASE("integrate") {
  const auto& rule = default_rule();
  CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0, rule) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(integrate([](double x) { return x * x * x; }, -1.0, 1.0, rule)) < 1e-16);

  // Endpoint square-root behaviour converges slowly without substitution.
  const double half_disc = integrate([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, gauss_legendre(200));
  CHECK(std::abs(half_disc - kPi / 2.0) < 1e-6);
  CHECK(std::abs(half_disc - kPi / 2.0) > 1e-12);

  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 1.0, rule), std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double x) { return x > 0.5 ? std::numeric_limits<double>::infinity() : 0.0; },
                            0.0, 1.0, rule),
                  NonFiniteValue);
  CHECK_THROWS_AS(integrate([](double x) { return std::log(x - 0.5); }, 0.0, 1.0, rule), NonFiniteValue);
}

TEST_CASE("integrate_split") {
  const auto rule = gauss_legendre(10);
  CHECK(std::abs(integrate_split([](double x) { return std::abs(x); }, -1.0, 1.0, {0.0}, rule) - 1.0) < 1e-14);
  CHECK(std::abs(integrate_split([](double x) { return std::abs(x - 0.3); }, -1.0, 1.0, {0.3}, rule) - 1.09) <
        1e-13);

  auto smooth = [](double x) { return std::exp(x) * std::cos(3.0 * x); };
  CHECK(integrate_split(smooth, -1.0, 2.0, std::span<const double>{}, rule) == integrate(smooth, -1.0, 2.0, rule));

  CHECK_THROWS_AS(integrate_split(smooth, -1.0, 1.0, {0.5, 0.2}, rule), std::invalid_argument);
  CHECK_THROWS_AS(integrate_split(smooth, -1.0, 1.0, {1.0}, rule), std::invalid_argument);
}

TEST_CASE("property: kink split integral of |x - s| is 1 + s^2") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ss(-0.999, 0.999);
  const auto rule = gauss_legendre(10);
  for (int trial = 0; trial < 1000; ++trial) {
    const double s = ss(rng);
    const double got = integrate_split([s](double x) { return std::abs(x - s); }, -1.0, 1.0, {s}, rule);
    CHECK(std::abs(got - (1.0 + s * s)) <= 1e-13);
  }
}

TEST_CASE("integrate_adaptive") {
  auto gaussian = [](double x) { return std::exp(-4.0 * x * x); };
  const double fixed = integrate(gaussian, -1.0, 1.0, gauss_legendre(256));
  CHECK(std::abs(integrate_adaptive(gaussian, -1.0, 1.0, 1e-10) - fixed) < 1e-10);

  auto kink = [](double x) { return std::abs(x - 0.3) * std::cos(x); };
  const double split = integrate_split(kink, -1.0, 1.0, {0.3}, default_rule());
  CHECK(std::abs(integrate_adaptive(kink, -1.0, 1.0, 1e-10) - split) < 1e-9);

  CHECK(integrate_adaptive([](double) { return 0.0; }, -1.0, 1.0, 1e-10) == 0.0);

  const auto est = integrate_adaptive_estimate(gaussian, -1.0, 1.0, 1e-12);
  CHECK(est.error <= 1e-12);

  CHECK_THROWS_AS(integrate_adaptive(gaussian, -1.0, 1.0, 0.0), std::invalid_argument);

  // A jump cannot be resolved to 1e-15 within 40 bisections.
  auto step = [](double x) { return x < 0.3 ? 0.0 : 1.0; };
  try {
    integrate_adaptive(step, -1.0, 1.0, 1e-15);
    FAIL("expected ToleranceNotMet");
  } catch (const ToleranceNotMet& e) {
    CHECK(std::abs(e.estimate() - 0.7) < 1e-9);
    CHECK(e.error_bound() > 1e-15);
  }
}

TEST_CASE("split and adaptive agree on kinked weighted integrands") {
  // |delta t - cos(phi)| sin^{n-2}(phi) and the radial-constant integrand, the
  // shapes used by the constant computations after x = cos(phi).
  const double tol = 1e-11;
  for (int n : {3, 4, 5, 8}) {
    for (double s : {-0.6, 0.0, 0.27, 0.81}) {
      auto f = [&](double phi) { return std::abs(s - std::cos(phi)) * std::pow(std::sin(phi), n - 2); };
      const double split = integrate_split(f, 0.0, kPi, {std::acos(s)}, default_rule());
      CHECK(std::abs(split - integrate_adaptive(f, 0.0, kPi, tol)) <= 10 * tol);

      const double rho = 0.7;
      auto g = [&](double phi) {
        const double x = std::cos(phi);
        return std::abs(x - s) * std::pow(std::sin(phi), n - 2) / std::pow(1.0 - 2.0 * x * rho + rho * rho, 0.5 * (n - 2));
      };
      const double split_g = integrate_split(g, 0.0, kPi, {std::acos(s)}, default_rule());
      CHECK(std::abs(split_g - integrate_adaptive(g, 0.0, kPi, tol)) <= 10 * tol);
    }
  }
}

TEST_CASE("integrate_sine_power") {
  const auto& rule = default_rule();
  // int_0^pi sin^beta = sqrt(pi) Gamma((beta+1)/2) / Gamma(beta/2 + 1)
  for (double beta : {-0.9, -0.6, -0.5, 0.0, 0.3, 0.5, 1.0, 2.0, 2.7, 5.0}) {
    CAPTURE(beta);
    const double exact = std::sqrt(kPi) * std::tgamma((beta + 1) / 2) / std::tgamma(beta / 2 + 1);
    const double got = integrate_sine_power([](double) { return 1.0; }, beta, 0.0, kPi, rule);
    CHECK(std::abs(got - exact) <= 1e-13 * exact);

    // Half range, and a split that must not change the value.
    const double half = integrate_sine_power([](double) { return 1.0; }, beta, 0.0, kPi / 2, rule);
    CHECK(std::abs(half - exact / 2) <= 1e-13 * exact);
    const double cuts[] = {0.4, 2.0};
    const double split = integrate_sine_power([](double) { return 1.0; }, beta, 0.0, kPi, cuts, rule);
    CHECK(std::abs(split - exact) <= 1e-13 * exact);
  }

  // Odd part integrates to zero.
  CHECK(std::abs(integrate_sine_power([](double p) { return std::cos(p); }, 0.4, 0.0, kPi, rule)) < 1e-14);

  CHECK_THROWS_AS(integrate_sine_power([](double) { return 1.0; }, -1.0, 0.0, kPi, rule), std::domain_error);
  CHECK_THROWS_AS(integrate_sine_power([](double) { return 1.0; }, 0.5, 1.0, 4.0, rule), std::invalid_argument);
  const double bad[] = {2.0, 1.0};
  CHECK_THROWS_AS(integrate_sine_power([](double) { return 1.0; }, 0.5, 0.0, kPi, bad, rule),
                  std::invalid_argument);
}
