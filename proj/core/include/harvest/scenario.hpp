#pragma once

#include <optional>
#include <string_view>

#include "harvest/specfun.hpp"

namespace harvest {

// One two-detector scenario, every quantity rescaled by the switching width
// sigma: omega_a_sigma = Omega_A sigma, delta_omega_sigma = (Omega_B - Omega_A)
// sigma, l_over_sigma = L / sigma. The coupling lambda is dimensionless.
struct DetectorPairConfig {
  double omega_a_sigma = 0.0;
  double delta_omega_sigma = 0.0;
  double l_over_sigma = 1.0;
  double coupling = 0.1;

  // Largest gap difference for which exp(delta^2 / 4) stays well inside double range.
  static constexpr double kMaxDeltaOmegaSigma = 35.0;
  // Couplings above this are accepted but outside the comfortable perturbative range.
  static constexpr double kPerturbativeCoupling = 0.3;

  double omega_b_sigma() const noexcept { return omega_a_sigma + delta_omega_sigma; }

  // Throws DomainError naming the offending field.
  void validate() const;

  bool coupling_is_perturbative() const noexcept { return coupling <= kPerturbativeCoupling; }

  bool operator==(const DetectorPairConfig&) const = default;
};

enum class Method { ClosedForm, OracleSingleIntegral, OracleDoubleIntegral };

std::string_view to_string(Method method) noexcept;

// Second-order density-matrix data for one scenario.
struct HarvestReport {
  double p_a = 0.0;
  double p_b = 0.0;
  ComplexValue x{};
  std::optional<ComplexValue> c_corr;  // only filled by the oracle pipeline
  double concurrence = 0.0;
  Method method = Method::ClosedForm;

  // sqrt(P_A P_B), the competitor of |X|.
  double geometric_mean_probability() const;
};

// 2 max(0, |X| - sqrt(P_A P_B)).
double concurrence_from(double p_a, double p_b, ComplexValue x);

}  // namespace harvest
