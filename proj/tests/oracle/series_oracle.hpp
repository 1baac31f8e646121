#pragma once

// Extended-precision reference evaluations used only by the tests. Each one
// follows a different route from the library: plain power series and brute
// force quadrature in long double.

#include <cmath>
#include <complex>

namespace harvest_test::oracle {

using ld = long double;
using cld = std::complex<long double>;

inline constexpr ld kPiL = 3.141592653589793238462643383279502884L;

// erf(x) = (2/sqrt(pi)) sum_n (-1)^n x^(2n+1) / (n! (2n+1)), first `terms` terms.
inline ld erf_maclaurin(ld x, int terms = 30) {
  ld term = x;  // (-1)^n x^(2n+1) / n!
  ld sum = 0.0L;
  for (int n = 0; n < terms; ++n) {
    sum += term / (2 * n + 1);
    term *= -x * x / (n + 1);
  }
  return 2.0L / std::sqrt(kPiL) * sum;
}

// erfi(x) = (2/sqrt(pi)) sum_n x^(2n+1) / (n! (2n+1)).
inline ld erfi_maclaurin(ld x, int terms = 60) {
  ld term = x;
  ld sum = 0.0L;
  for (int n = 0; n < terms; ++n) {
    sum += term / (2 * n + 1);
    term *= x * x / (n + 1);
  }
  return 2.0L / std::sqrt(kPiL) * sum;
}

// erfcx(x) = (2/sqrt(pi)) int_0^inf exp(-u^2 - 2 x u) du by composite Simpson
// on [0, 12]; the truncated tail is below exp(-144).
inline ld erfcx_quadrature(ld x, int panels = 200000) {
  const ld b = 12.0L;
  const ld h = b / panels;
  auto f = [x](ld u) { return std::exp(-u * u - 2.0L * x * u); };
  ld sum = f(0.0L) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0L : 2.0L) * f(i * h);
  return 2.0L / std::sqrt(kPiL) * sum * h / 3.0L;
}

// w(z) = sum_n (i z)^n / Gamma(n/2 + 1), the Maclaurin series of the Faddeeva
// function. Terms peak near exp(|z|^2), so keep |z| modest.
inline cld faddeeva_maclaurin(cld z, int terms = 400) {
  const cld iz(-z.imag(), z.real());
  cld power(1.0L, 0.0L);
  cld sum(0.0L, 0.0L);
  for (int n = 0; n < terms; ++n) {
    sum += power / std::tgamma(n / 2.0L + 1.0L);
    power *= iz;
  }
  return sum;
}

// w(z) for Im z > 0 from the Laplace continued fraction
// w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))), evaluated
// bottom-up with `depth` levels.
inline cld faddeeva_continued_fraction(cld z, int depth = 4000) {
  cld tail(0.0L, 0.0L);
  for (int k = depth; k >= 1; --k) tail = (k / 2.0L) / (z - tail);
  return cld(0.0L, 1.0L) / std::sqrt(kPiL) / (z - tail);
}

}  // namespace harvest_test::oracle
