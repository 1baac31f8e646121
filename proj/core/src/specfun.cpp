#include "harvest/specfun.hpp"

#include <cmath>

namespace harvest::specfun {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kInvSqrtPi = 0.56418958354775628695;

// Inside this ellipse, (|x|/6.3)^2 + (|y|/4.4)^2 < kSeriesRadius2, the
// Maclaurin series is used. Outside the unit ellipse the plain continued
// fraction converges quickly; in between, the Taylor-about-(z + ih) scheme.
constexpr double kSeriesRadius2 = 0.085264;

// exp(-z^2) [1 + (2i/sqrt(pi)) sum_n z^(2n+1) / (n! (2n+1))], valid everywhere
// but only accurate near the origin.
ComplexValue w_maclaurin(ComplexValue z, double scaled_radius, double scaled_imag) {
  const double r = (1.0 - 0.85 * scaled_imag) * scaled_radius;
  const int terms = static_cast<int>(std::lround(6.0 + 72.0 * r));
  const ComplexValue z2 = z * z;
  ComplexValue sum = 1.0 / (2.0 * terms + 1.0);
  for (int k = terms; k >= 1; --k) {
    sum = sum * z2 / static_cast<double>(k) + 1.0 / (2.0 * k - 1.0);
  }
  return std::exp(-z2) * (1.0 + ComplexValue(0.0, kTwoOverSqrtPi) * z * sum);
}

// w(x + iy) for x, y >= 0 outside the series region.
ComplexValue w_first_quadrant(double x, double y, double rho2) {
  double shift = 0.0;
  int taylor_terms = 0;
  int cf_terms = 0;
  if (rho2 > 1.0) {
    cf_terms = 3 + static_cast<int>(1442.0 / (26.0 * std::sqrt(rho2) + 77.0));
  } else {
    const double r = (1.0 - y / 4.4) * std::sqrt(1.0 - rho2);
    shift = 1.88 * r;
    taylor_terms = static_cast<int>(std::lround(7.0 + 34.0 * r));
    cf_terms = static_cast<int>(std::lround(16.0 + 26.0 * r));
  }

  // r_n = (1/2) / (h - i z + (n + 1) r_{n+1}); with h = 0, w = (2/sqrt(pi)) r_0.
  // With h > 0 the r_n are ratios of consecutive Taylor coefficients of w
  // about z + ih, and the series is summed alongside the recurrence.
  const ComplexValue base(shift + y, -x);
  const double two_h = 2.0 * shift;
  double lambda = shift > 0.0 ? std::pow(two_h, taylor_terms) : 0.0;
  ComplexValue ratio = 0.0;
  ComplexValue taylor = 0.0;
  for (int n = cf_terms; n >= 0; --n) {
    ratio = 0.5 / (base + static_cast<double>(n + 1) * ratio);
    if (shift > 0.0 && n <= taylor_terms) {
      taylor = ratio * (lambda + taylor);
      lambda /= two_h;
    }
  }
  ComplexValue w = kTwoOverSqrtPi * (shift > 0.0 ? taylor : ratio);
  // On the real axis the fraction only resolves the Dawson part.
  if (y == 0.0) w.real(std::exp(-x * x));
  return w;
}

}  // namespace

double erf_real(double x) noexcept { return std::erf(x); }

double erfcx_real(double x) noexcept {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx_real(-x);
  if (x < 5.0) return std::exp(x * x) * std::erfc(x);
  // Laplace continued fraction:
  // erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  double t = x;
  for (int k = 60; k >= 1; --k) t = x + 0.5 * k / t;
  return kInvSqrtPi / t;
}

ComplexValue faddeeva_w(ComplexValue z) noexcept {
  const double x = z.real();
  const double y = z.imag();
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double sx = ax / 6.3;
  const double sy = ay / 4.4;
  const double rho2 = sx * sx + sy * sy;

  if (rho2 < kSeriesRadius2) return w_maclaurin(z, std::sqrt(rho2), sy);

  ComplexValue w = w_first_quadrant(ax, ay, rho2);
  if (y < 0.0) {
    // w(z) = 2 exp(-z^2) - w(-z), with -z folded back into the first quadrant.
    const ComplexValue q(ax, ay);
    w = 2.0 * std::exp(-(q * q)) - w;
    if (x > 0.0) w = std::conj(w);
  } else if (x < 0.0) {
    w = std::conj(w);
  }
  return w;
}

ComplexValue scaled_erfi(ComplexValue z) noexcept {
  if (z.imag() == 0.0) return {faddeeva_w(z).imag(), 0.0};
  if (z.imag() < 0.0) return -scaled_erfi(-z);
  return ComplexValue(0.0, 1.0) * (std::exp(-(z * z)) - faddeeva_w(z));
}

}  // namespace harvest::specfun
