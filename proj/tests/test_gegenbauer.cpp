#include <doctest.h>

#include <cmath>
#include <random>

#include "khavinson/errors.hpp"
#include "khavinson/gegenbauer.hpp"
#include "khavinson/series.hpp"
#include "oracles.hpp"

using namespace khavinson;

namespace {

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("pochhammer") {
  CHECK(pochhammer(2.0, 0) == 1.0);
  CHECK(pochhammer(2.0, 3) == 24.0);
  CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pochhammer(-3.0, 5) == 0.0);
  CHECK_THROWS_AS(pochhammer(1e3, 200), std::overflow_error);
}

TEST_CASE("GegenbauerIndex and DimensionParams validate their ranges") {
  CHECK_THROWS_AS(GegenbauerIndex(-0.5, 2), std::domain_error);
  CHECK_THROWS_AS(GegenbauerIndex(1.0, -1), std::domain_error);
  CHECK_NOTHROW(GegenbauerIndex(-0.25, 3));
  CHECK_THROWS_AS(DimensionParams(2), std::domain_error);

  const DimensionParams d3(3);
  CHECK(d3.c_n() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(d3.lambda_low() == 0.5);
  CHECK(d3.lambda_mid() == 1.5);
  CHECK(d3.lambda_high() == 2.5);
  for (int n = 3; n <= 40; ++n) {
    const double direct = 2.0 * std::tgamma(0.5 * (n + 2)) / (std::tgamma(0.5) * std::tgamma(0.5 * (n - 1)));
    CHECK(DimensionParams(n).c_n() > 0.0);
    CHECK(rel_gap(DimensionParams(n).c_n(), direct) < 1e-13);
  }
  // log-Gamma path stays finite where Gamma itself overflows.
  CHECK(std::isfinite(DimensionParams(400).c_n()));
}

TEST_CASE("eval_explicit special cases") {
  for (double lambda : {0.5, 1.0, 2.5}) {
    CHECK(eval_explicit(GegenbauerIndex(lambda, 0), 0.3) == 1.0);
  }
  CHECK(eval_explicit(GegenbauerIndex(1.5, 1), 0.4) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(std::abs(eval_explicit(GegenbauerIndex(1.0, 2), 0.5)) < 1e-15);
  CHECK_THROWS_AS(eval_explicit(GegenbauerIndex(1.0, 2), 1.5), std::domain_error);
}

TEST_CASE("explicit sum matches the generating-function coefficients") {
  for (double lambda : {-0.25, 0.5, 1.0, 1.5, 3.0}) {
    for (int k = 0; k <= 14; ++k) {
      for (double x : {-0.8, -0.1, 0.0, 0.5, 0.95}) {
        const double expected = oracle::gegenbauer_generating(lambda, k, x);
        CHECK(rel_gap(eval_explicit(GegenbauerIndex(lambda, k), x), expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("eval_recurrence examples") {
  CHECK(eval_recurrence(GegenbauerIndex(2.0, 1), 0.25) == 1.0);
  CHECK(eval_recurrence(GegenbauerIndex(0.5, 5), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const GegenbauerIndex idx(3.0, 7);
  CHECK(rel_gap(eval_recurrence(idx, -0.6), eval_explicit(idx, -0.6)) < 1e-13);
  CHECK_THROWS_AS(eval_recurrence(idx, -1.01), std::domain_error);
}

TEST_CASE("recurrence agrees with the explicit sum") {
  for (double lambda : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (int k = 0; k <= 30; ++k) {
      for (double x : {-0.9, -0.5, 0.0, 0.3, 0.7, 0.99}) {
        const GegenbauerIndex idx(lambda, k);
        const double rec = eval_recurrence(idx, x);
        CHECK(std::abs(rec - eval_explicit(idx, x)) <= 1e-10 * std::max(1.0, std::abs(rec)));
      }
    }
  }
}

TEST_CASE("eval_sequence") {
  const auto a = eval_sequence(1.0, 1, 0.5);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 1.0);

  for (double v : eval_sequence(0.5, 3, 1.0)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const auto at_zero = eval_sequence(2.0, 10, 0.0);
  for (std::size_t k = 1; k < at_zero.size(); k += 2) CHECK(at_zero[k] == 0.0);
  for (std::size_t k = 0; k < at_zero.size(); k += 2) CHECK(at_zero[k] != 0.0);

  const auto seq = eval_sequence(1.5, 20, 0.37);
  for (int k = 0; k <= 20; ++k) CHECK(seq[k] == eval_recurrence(GegenbauerIndex(1.5, k), 0.37));
  CHECK_THROWS_AS(eval_sequence(1.0, -1, 0.0), std::domain_error);
}

TEST_CASE("property: parity and endpoint value") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.05, 4.0), xs(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    const double lambda = lam(rng);
    const int k = deg(rng);
    const double x = xs(rng);
    const GegenbauerIndex idx(lambda, k);
    const double plus = eval_recurrence(idx, x);
    const double minus = eval_recurrence(idx, -x);
    CHECK(std::abs(minus - (k % 2 ? -plus : plus)) <= 1e-14 * std::max(1.0, std::abs(plus)));

    const double one = eval_recurrence(idx, 1.0);
    const double closed = pochhammer(2.0 * lambda, k) / std::tgamma(k + 1.0);
    CHECK(std::abs(one - closed) <= 1e-12 * std::abs(closed));
  }
}

TEST_CASE("property: generating function partial sums") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> zs(-0.5, 0.5), xs(-0.9, 0.9);
  for (double lambda : {0.5, 1.0, 1.5, 2.5, 3.0}) {
    for (int trial = 0; trial < 50; ++trial) {
      const double z = zs(rng);
      const double x = xs(rng);
      SeriesControl ctl;
      const std::size_t K = truncation_order(lambda, std::abs(z), ctl);
      const auto c = eval_sequence(lambda, static_cast<int>(K), x);
      double sum = 0.0, zk = 1.0;
      for (std::size_t k = 0; k <= K; ++k, zk *= z) sum += c[k] * zk;
      CHECK(std::abs(sum - std::pow(1.0 - 2.0 * x * z + z * z, -lambda)) <= 1e-10);
    }
  }
}

TEST_CASE("derivative") {
  CHECK(derivative(GegenbauerIndex(1.0, 3), 0, 0.2) == eval_recurrence(GegenbauerIndex(1.0, 3), 0.2));
  CHECK(derivative(GegenbauerIndex(1.0, 1), 1, 0.77) == 2.0);
  CHECK(derivative(GegenbauerIndex(1.0, 2), 3, 0.4) == 0.0);

  auto second_fd = [](double lambda, int k, double x) {
    return oracle::central_second(
        [&](double u) { return oracle::gegenbauer_generating(lambda, k, u); }, x, 1e-4);
  };
  CHECK(std::abs(derivative(GegenbauerIndex(1.5, 4), 2, 0.3) - second_fd(1.5, 4, 0.3)) < 1e-6);

  for (double lambda : {0.5, 1.0, 2.0, 3.0}) {
    for (int k = 0; k <= 15; ++k) {
      for (double x : {-0.8, -0.3, 0.1, 0.6}) {
        const GegenbauerIndex idx(lambda, k);
        const double fd = oracle::central_first([&](double u) { return eval_explicit(idx, u); }, x, 1e-5);
        CHECK(std::abs(derivative(idx, 1, x) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("Legendre and associated Legendre") {
  CHECK(legendre(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
  for (int k = 0; k <= 6; ++k) CHECK(assoc_legendre(k, 0, 0.3) == legendre(k, 0.3));
  CHECK(assoc_legendre(1, 1, 0.6) == doctest::Approx(-0.8).epsilon(1e-15));
  // P_2^1(x) = -3x sqrt(1-x^2), P_2^2(x) = 3(1-x^2)
  CHECK(assoc_legendre(2, 1, 0.4) == doctest::Approx(-3.0 * 0.4 * std::sqrt(0.84)).epsilon(1e-14));
  CHECK(assoc_legendre(2, 2, 0.4) == doctest::Approx(3.0 * 0.84).epsilon(1e-14));
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.1), std::domain_error);
  CHECK_THROWS_AS(assoc_legendre(2, 1, 1.0), std::domain_error);
}

TEST_CASE("series truncation rule") {
  SeriesControl ctl;
  CHECK(truncation_order(1.0, 0.0, ctl) == 8);
  CHECK(truncation_order(0.5, 0.1, ctl) == 15);  // 0.1^15 < 1e-14 <= 0.1^14
  const std::size_t K = truncation_order(2.0, 0.5, ctl);
  CHECK(std::pow(0.5, K) * std::pow(K + 1.0, 3.0) < 1e-14);
  CHECK(std::pow(0.5, K - 1) * std::pow(static_cast<double>(K), 3.0) >= 1e-14);

  CHECK_THROWS_AS(truncation_order(0.5, 0.99, ctl), SeriesNotConverged);
  try {
    truncation_order(0.5, 0.99, ctl);
  } catch (const SeriesNotConverged& e) {
    CHECK(e.cap() == 512);
    CHECK(e.required() > 512);
  }
  const SeriesControl wide = widened(ctl, 0.5, 0.99);
  CHECK(wide.max_terms > 512);
  CHECK_NOTHROW(truncation_order(0.5, 0.99, wide));
  CHECK(widened(ctl, 0.5, 0.1).max_terms == 512);

  SeriesControl bad;
  bad.max_terms = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.max_terms = 100;
  bad.tail_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
