#pragma once

#include <stdexcept>
#include <string>

namespace tangenttri {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure stopped before meeting its tolerance. Carries the
/// best estimate it reached and the error bound attached to that estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace tangenttri
