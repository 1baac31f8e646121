#pragma once

#include "harvest/scenario.hpp"
#include "harvest/specfun.hpp"

// Analytic second-order results for two static detectors with Gaussian
// switching coupled to the massless scalar vacuum in 3+1 Minkowski space.
// Every function takes sigma-rescaled quantities; sigma never appears.
namespace harvest::closedform {

// Excitation probability of a single detector with gap Omega sigma:
// (lambda^2 / 4 pi) [exp(-Omega^2 sigma^2) - sqrt(pi) Omega sigma erfc(Omega sigma)].
// Negative gaps are admitted (de-excitation side) for exploration.
double transition_probability(double omega_sigma, double coupling);

// Off-diagonal |gg><ee| element X. Throws DomainError for an invalid config.
ComplexValue correlation_x(const DetectorPairConfig& cfg);

// P_A, P_B, X and the concurrence 2 max(0, |X| - sqrt(P_A P_B)).
HarvestReport concurrence(const DetectorPairConfig& cfg);

// |X| - sqrt(P_A P_B): the unclamped quantity whose positive part is half the
// concurrence. Smooth through the harvesting threshold, so searches use it.
double harvesting_margin(const DetectorPairConfig& cfg);

namespace detail {

// X without validation. The gap difference may be negative, which describes
// the same pair with the detector labels exchanged.
ComplexValue correlation_x_unchecked(double omega_a_sigma, double delta_omega_sigma,
                                     double l_over_sigma, double coupling);

// Unit-coupling margin times exp(a^2 + a d + d^2 / 2), the common Gaussian
// factor of |X| and sqrt(P_A P_B). Same sign as the margin but free of
// underflow at large gaps.
double scaled_unit_margin(double omega_a_sigma, double delta_omega_sigma, double l_over_sigma);

}  // namespace detail
}  // namespace harvest::closedform
