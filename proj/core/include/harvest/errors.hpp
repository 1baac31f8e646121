#pragma once

#include <stdexcept>
#include <string>

namespace harvest {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario outside the supported parameter domain (L <= 0, negative gaps, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quadrature or regulator extrapolation failed its self-consistency check.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// f(L) = |X| - sqrt(P_A P_B) is non-positive everywhere on the scan grid.
class NoHarvestingRegion : public Error {
 public:
  using Error::Error;
};

// The scan reached its upper bound with harvesting still possible.
class BracketingFailure : public Error {
 public:
  BracketingFailure(const std::string& what, double lower_bound)
      : Error(what), lower_bound_(lower_bound) {}

  // Largest separation known to still admit harvesting.
  double lower_bound() const noexcept { return lower_bound_; }

 private:
  double lower_bound_;
};

// Non-identical detectors never out-harvest identical ones on the scan grid.
class NoCrossover : public Error {
 public:
  using Error::Error;
};

}  // namespace harvest
