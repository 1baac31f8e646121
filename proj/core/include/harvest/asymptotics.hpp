#pragma once

#include "harvest/scenario.hpp"
#include "harvest/specfun.hpp"

// Limiting forms of the closed-form results. The regime is always chosen by
// the caller; "small" and "large" here have no sharp numerical boundary, so
// nothing is auto-detected and no regime check is made.
namespace harvest::closedform {

enum class GapRegime {
  SmallGaps,  // Omega_A sigma <= Omega_B sigma << 1
  LargeGaps,  // 1 << Omega_A sigma <= Omega_B sigma
};

enum class SeparationRegime {
  SmallSeparation,  // L / sigma << 1
  LargeSeparation,  // L / sigma >> 1
};

enum class ConcurrenceRegime {
  SmallSeparation,
  LargeSeparationSmallGaps,
  LargeSeparationLargeGaps,
};

// Approximation of sqrt(P_A P_B).
double asymptotic_gm_probability(const DetectorPairConfig& cfg, GapRegime regime);

// Approximation of X.
ComplexValue asymptotic_x(const DetectorPairConfig& cfg, SeparationRegime regime);

// Approximation of the concurrence, including the max(0, .) clamp.
double asymptotic_concurrence(const DetectorPairConfig& cfg, ConcurrenceRegime regime);

// Large-gap estimate of the largest harvesting separation,
// L_max / sigma ~ 2 sqrt(Omega_A sigma (Omega_A sigma + Delta Omega sigma)).
double lmax_large_gap_estimate(double omega_a_sigma, double delta_omega_sigma);

// Rough estimate of d(concurrence)/d(Delta Omega sigma):
// (lambda^2/pi) exp(-(a^2 + b^2)/2) [(sqrt(pi)/4) erfcx(b) - b / l^2] with
// a = Omega_A sigma, b = Omega_B sigma, l = L / sigma. Positive for well
// separated detectors, negative as l -> 0. Heuristic, not a derivative of the
// closed form.
double concurrence_gap_derivative_estimate(const DetectorPairConfig& cfg);

}  // namespace harvest::closedform
