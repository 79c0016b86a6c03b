#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace khavinson {

// Base class for failures of a numerical procedure (as opposed to bad input,
// which is reported through std::invalid_argument / std::domain_error).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A truncated power series needed more terms than its SeriesControl allows.
class SeriesNotConverged : public NumericalError {
 public:
  SeriesNotConverged(std::size_t required, std::size_t cap)
      : NumericalError("series truncation needs " + std::to_string(required) +
                       " terms, cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

// Adaptive quadrature gave up before reaching the requested tolerance.
class ToleranceNotMet : public NumericalError {
 public:
  ToleranceNotMet(double estimate, double error_bound)
      : NumericalError("adaptive quadrature did not reach tolerance (estimate " +
                       std::to_string(estimate) + ", error bound " +
                       std::to_string(error_bound) + ")"),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

class NonFiniteValue : public NumericalError {
 public:
  explicit NonFiniteValue(double where)
      : NumericalError("integrand is not finite at x = " + std::to_string(where)),
        where_(where) {}

  double where() const noexcept { return where_; }

 private:
  double where_;
};

}  // namespace khavinson
