#pragma once

#include <cstddef>

namespace khavinson {

// Truncation of the rho-power series sum_k a_k C_k^lambda(.) C_k^lambda(.) rho^k.
struct SeriesControl {
  std::size_t max_terms = 512;
  double tail_tol = 1e-14;

  // Throws std::invalid_argument unless max_terms >= 8 and tail_tol > 0.
  void validate() const;
};

// Absolute ceiling for SeriesControl::max_terms after widening.
inline constexpr std::size_t kSeriesHardCap = std::size_t{1} << 17;

// The smallest K >= 8 with rho^K (K+1)^max(2 lambda - 1, 0) < tail_tol,
// searched up to `limit`; returns limit + 1 if none exists below it.
std::size_t required_terms(double lambda, double rho, double tail_tol,
                           std::size_t limit = kSeriesHardCap);

// required_terms checked against ctl.max_terms. The series is summed over
// k = 0..K inclusive. Throws SeriesNotConverged when the cap is exceeded.
std::size_t truncation_order(double lambda, double rho, const SeriesControl& ctl);

// A copy of ctl whose max_terms is raised (never lowered) to what the tail
// rule needs for (lambda, rho), limited by kSeriesHardCap.
SeriesControl widened(const SeriesControl& ctl, double lambda, double rho);

}  // namespace khavinson
