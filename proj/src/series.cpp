#include "khavinson/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "khavinson/errors.hpp"

namespace khavinson {

void SeriesControl::validate() const {
  if (max_terms < 8) {
    throw std::invalid_argument("SeriesControl: max_terms must be at least 8");
  }
  if (!(tail_tol > 0.0)) {
    throw std::invalid_argument("SeriesControl: tail_tol must be positive");
  }
}

std::size_t required_terms(double lambda, double rho, double tail_tol, std::size_t limit) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::domain_error("series radius must lie in [0, 1)");
  }
  if (rho == 0.0) return 8;
  const double growth = std::max(2.0 * lambda - 1.0, 0.0);
  const double log_rho = std::log(rho);
  const double log_tol = std::log(tail_tol);
  for (std::size_t K = 8; K <= limit; ++K) {
    const double log_bound = static_cast<double>(K) * log_rho + growth * std::log(K + 1.0);
    if (log_bound < log_tol) return K;
  }
  return limit + 1;
}

std::size_t truncation_order(double lambda, double rho, const SeriesControl& ctl) {
  ctl.validate();
  const std::size_t K = required_terms(lambda, rho, ctl.tail_tol, ctl.max_terms);
  if (K > ctl.max_terms) {
    throw SeriesNotConverged(required_terms(lambda, rho, ctl.tail_tol), ctl.max_terms);
  }
  return K;
}

SeriesControl widened(const SeriesControl& ctl, double lambda, double rho) {
  SeriesControl out = ctl;
  const std::size_t need = required_terms(lambda, rho, ctl.tail_tol);
  out.max_terms = std::max(ctl.max_terms, std::min(need, kSeriesHardCap));
  return out;
}

}  // namespace khavinson
