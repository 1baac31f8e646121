#include "harvest/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harvest::closedform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.77245385090551602730;

// exp(-(a^2 + b^2)/2), the Gaussian weight shared by the large-separation forms.
double pair_weight(const DetectorPairConfig& cfg) {
  const double a = cfg.omega_a_sigma;
  const double b = cfg.omega_b_sigma();
  return std::exp(-0.5 * (a * a + b * b));
}

}  // namespace

double asymptotic_gm_probability(const DetectorPairConfig& cfg, GapRegime regime) {
  const double lam2 = cfg.coupling * cfg.coupling;
  const double a = cfg.omega_a_sigma;
  const double b = cfg.omega_b_sigma();
  switch (regime) {
    case GapRegime::SmallGaps:
      return lam2 / (4.0 * kPi) * pair_weight(cfg);
    case GapRegime::LargeGaps:
      return lam2 / (8.0 * kPi) * pair_weight(cfg) / (a * b) *
             (1.0 - 3.0 / (4.0 * a * a) - 3.0 / (4.0 * b * b));
  }
  return 0.0;
}

ComplexValue asymptotic_x(const DetectorPairConfig& cfg, SeparationRegime regime) {
  const double lam2 = cfg.coupling * cfg.coupling;
  const double d = cfg.delta_omega_sigma;
  const double l = cfg.l_over_sigma;
  const double sum = 2.0 * cfg.omega_a_sigma + d;
  switch (regime) {
    case SeparationRegime::SmallSeparation: {
      const double re = std::exp(-0.25 * d * d) / kSqrtPi + 0.5 * d * std::erf(0.5 * d);
      return -lam2 * std::exp(-0.25 * sum * sum) / (4.0 * kSqrtPi) * ComplexValue(re, 1.0 / l);
    }
    case SeparationRegime::LargeSeparation: {
      const double re = 2.0 / (l * kSqrtPi) * pair_weight(cfg);
      const double im = std::exp(-0.25 * (sum * sum + l * l)) * std::cos(0.5 * l * d);
      return -lam2 / (4.0 * kSqrtPi * l) * ComplexValue(re, im);
    }
  }
  return {};
}

double asymptotic_concurrence(const DetectorPairConfig& cfg, ConcurrenceRegime regime) {
  const double lam2 = cfg.coupling * cfg.coupling;
  const double l = cfg.l_over_sigma;
  const double a = cfg.omega_a_sigma;
  const double b = cfg.omega_b_sigma();
  switch (regime) {
    case ConcurrenceRegime::SmallSeparation: {
      const double sum = a + b;
      return lam2 / (2.0 * l * kSqrtPi) * std::exp(-0.25 * sum * sum);
    }
    case ConcurrenceRegime::LargeSeparationSmallGaps:
      return std::max(0.0, lam2 / (2.0 * kPi) * pair_weight(cfg) * (2.0 / (l * l) - 1.0));
    case ConcurrenceRegime::LargeSeparationLargeGaps:
      return std::max(0.0, lam2 / (2.0 * kPi) * pair_weight(cfg) *
                               (2.0 / (l * l) - 1.0 / (2.0 * a * b)));
  }
  return 0.0;
}

double lmax_large_gap_estimate(double omega_a_sigma, double delta_omega_sigma) {
  return 2.0 * std::sqrt(omega_a_sigma * (omega_a_sigma + delta_omega_sigma));
}

double concurrence_gap_derivative_estimate(const DetectorPairConfig& cfg) {
  const double lam2 = cfg.coupling * cfg.coupling;
  const double b = cfg.omega_b_sigma();
  const double l = cfg.l_over_sigma;
  return lam2 / kPi * pair_weight(cfg) *
         (0.25 * kSqrtPi * specfun::erfcx_real(b) - b / (l * l));
}

}  // namespace harvest::closedform
