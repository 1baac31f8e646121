#pragma once

#include <complex>

namespace harvest {

using ComplexValue = std::complex<double>;

namespace specfun {

// Error function, (2/sqrt(pi)) * int_0^x exp(-t^2) dt.
double erf_real(double x) noexcept;

// Scaled complementary error function exp(x^2) * erfc(x).
//
// Evaluated without forming exp(x^2) for large positive x, so the result is
// finite for all x above roughly -26.6 (below that the true value overflows).
double erfcx_real(double x) noexcept;

// Faddeeva function w(z) = exp(-z^2) * erfc(-i z).
//
// Region-split evaluation: a Maclaurin series near the origin, the Laplace
// continued fraction far from it, and in between a Taylor expansion about
// z + i h whose coefficients come from the same continued fraction. The lower
// half-plane is reached through w(z) = 2 exp(-z^2) - w(-z), which overflows
// (as w itself does) once Im z < -26.6 or so.
ComplexValue faddeeva_w(ComplexValue z) noexcept;

// exp(-z^2) * Erfi(z), where Erfi(z) = -i erf(i z).
//
// Uses exp(-z^2) Erfi(z) = i [exp(-z^2) - w(z)] in the upper half-plane and
// oddness in the lower one. Bounded along the real axis, where the unscaled
// Erfi grows like exp(x^2); real for real z.
ComplexValue scaled_erfi(ComplexValue z) noexcept;

}  // namespace specfun
}  // namespace harvest
