#include "harvest/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

void DetectorPairConfig::validate() const {
  require(std::isfinite(omega_a_sigma) && omega_a_sigma >= 0.0,
          "omega_a_sigma must be finite and >= 0, got " + std::to_string(omega_a_sigma));
  require(std::isfinite(delta_omega_sigma) && delta_omega_sigma >= 0.0,
          "delta_omega_sigma must be finite and >= 0, got " + std::to_string(delta_omega_sigma));
  require(delta_omega_sigma <= kMaxDeltaOmegaSigma,
          "delta_omega_sigma above " + std::to_string(kMaxDeltaOmegaSigma) +
              " overflows the correlation term, got " + std::to_string(delta_omega_sigma));
  require(std::isfinite(l_over_sigma) && l_over_sigma > 0.0,
          "l_over_sigma must be > 0 (X diverges for coincident detectors), got " +
              std::to_string(l_over_sigma));
  require(std::isfinite(coupling) && coupling > 0.0,
          "coupling must be > 0, got " + std::to_string(coupling));
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::ClosedForm: return "closed-form";
    case Method::OracleSingleIntegral: return "oracle-single-integral";
    case Method::OracleDoubleIntegral: return "oracle-double-integral";
  }
  return "unknown";
}

double HarvestReport::geometric_mean_probability() const { return std::sqrt(p_a * p_b); }

double concurrence_from(double p_a, double p_b, ComplexValue x) {
  return 2.0 * std::max(0.0, std::abs(x) - std::sqrt(p_a * p_b));
}

}  // namespace harvest
