#include "harvest/closedform.hpp"

#include <cmath>
#include <numbers>

namespace harvest::closedform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.77245385090551602730;

}  // namespace

double transition_probability(double omega_sigma, double coupling) {
  const double scale = coupling * coupling / (4.0 * kPi);
  const double w = omega_sigma;
  if (w >= 0.0) {
    // exp(-w^2) [1 - sqrt(pi) w erfcx(w)] keeps the erfc term from underflowing first.
    return scale * std::exp(-w * w) * (1.0 - kSqrtPi * w * specfun::erfcx_real(w));
  }
  return scale * (std::exp(-w * w) - kSqrtPi * w * std::erfc(w));
}

namespace detail {

ComplexValue correlation_x_unchecked(double omega_a_sigma, double delta_omega_sigma,
                                     double l_over_sigma, double coupling) {
  const double d = delta_omega_sigma;
  const double l = l_over_sigma;
  const double sum = 2.0 * omega_a_sigma + d;

  // The two Erfi terms are complex conjugates of each other, so the bracket is
  // 2 Re[exp(-i d l/2) Erfi(z)] + 2i cos(d l/2) with z = (l + i d)/2. Pulling in
  // exp(-l^2/4) turns exp(-i d l/2) Erfi(z) into exp(-d^2/4) exp(-z^2) Erfi(z).
  const ComplexValue z(0.5 * l, 0.5 * d);
  const double real_part = std::exp(-0.25 * d * d) * specfun::scaled_erfi(z).real();
  const double imag_part = std::exp(-0.25 * l * l) * std::cos(0.5 * d * l);

  const double prefactor =
      -coupling * coupling / (4.0 * kSqrtPi * l) * std::exp(-0.25 * sum * sum);
  return prefactor * ComplexValue(real_part, imag_part);
}

double scaled_unit_margin(double omega_a_sigma, double delta_omega_sigma, double l_over_sigma) {
  const double d = delta_omega_sigma;
  const double l = l_over_sigma;
  const ComplexValue z(0.5 * l, 0.5 * d);
  const ComplexValue bracket(specfun::scaled_erfi(z).real(),
                             std::exp(0.25 * (d * d - l * l)) * std::cos(0.5 * d * l));
  const double scaled_x = std::abs(bracket) / (4.0 * kSqrtPi * l);
  auto scaled_p = [](double w) {
    const double tail = w >= 0.0 ? specfun::erfcx_real(w) : std::exp(w * w) * std::erfc(w);
    return (1.0 - kSqrtPi * w * tail) / (4.0 * kPi);
  };
  return scaled_x - std::sqrt(scaled_p(omega_a_sigma) * scaled_p(omega_a_sigma + d));
}

}  // namespace detail

ComplexValue correlation_x(const DetectorPairConfig& cfg) {
  cfg.validate();
  return detail::correlation_x_unchecked(cfg.omega_a_sigma, cfg.delta_omega_sigma,
                                         cfg.l_over_sigma, cfg.coupling);
}

HarvestReport concurrence(const DetectorPairConfig& cfg) {
  HarvestReport report;
  report.x = correlation_x(cfg);
  report.p_a = transition_probability(cfg.omega_a_sigma, cfg.coupling);
  report.p_b = transition_probability(cfg.omega_b_sigma(), cfg.coupling);
  report.concurrence = concurrence_from(report.p_a, report.p_b, report.x);
  report.method = Method::ClosedForm;
  return report;
}

double harvesting_margin(const DetectorPairConfig& cfg) {
  const HarvestReport r = concurrence(cfg);
  return std::abs(r.x) - r.geometric_mean_probability();
}

}  // namespace harvest::closedform
