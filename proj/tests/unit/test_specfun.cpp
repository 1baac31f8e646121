#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "harvest/specfun.hpp"
#include "reference_values.hpp"
#include "series_oracle.hpp"

using harvest::ComplexValue;
namespace sf = harvest::specfun;
namespace ref = harvest_test::reference;
namespace orc = harvest_test::oracle;

namespace {

double rel(ComplexValue got, ComplexValue want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

ComplexValue to_double(orc::cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace

TEST_CASE("erf_real basics") {
  CHECK(sf::erf_real(0.0) == 0.0);
  CHECK(sf::erf_real(0.7) == doctest::Approx(-sf::erf_real(-0.7)).epsilon(1e-15));
  const double series = static_cast<double>(orc::erf_maclaurin(1.0L));
  CHECK(std::abs(sf::erf_real(1.0) - series) <= 1e-12);
}

TEST_CASE("erfcx_real against extended-precision references") {
  CHECK(sf::erfcx_real(0.0) == 1.0);
  const double quad = static_cast<double>(orc::erfcx_quadrature(1.0L));
  CHECK(std::abs(sf::erfcx_real(1.0) - quad) <= 1e-12 * quad);

  const double x = 50.0;
  const double leading = 1.0 / (x * std::sqrt(std::numbers::pi));
  CHECK(std::abs(sf::erfcx_real(x) - leading) <= 1e-3 * leading);

  for (const auto& s : ref::kErfcx) {
    CAPTURE(s.x);
    CHECK(std::abs(sf::erfcx_real(s.x) - s.value) <= 1e-13 * s.value);
  }
}

TEST_CASE("erfcx_real is positive and decreasing on x >= 0") {
  double prev = sf::erfcx_real(0.0);
  for (int i = 1; i <= 2000; ++i) {
    const double v = sf::erfcx_real(0.025 * i);
    REQUIRE(v > 0.0);
    REQUIRE(v < prev);
    prev = v;
  }
}

TEST_CASE("faddeeva_w against mpmath on the |Re z|, |Im z| <= 10 grid") {
  CHECK(sf::faddeeva_w({0.0, 0.0}) == ComplexValue(1.0, 0.0));
  double worst = 0.0;
  for (const auto& s : ref::kFaddeeva) worst = std::max(worst, rel(sf::faddeeva_w(s.z), s.value));
  CHECK(worst <= 1e-10);
}

TEST_CASE("faddeeva_w at 2+0.5i against two independent long-double schemes") {
  const orc::cld z(2.0L, 0.5L);
  const ComplexValue series = to_double(orc::faddeeva_maclaurin(z));
  const ComplexValue cf = to_double(orc::faddeeva_continued_fraction(z));
  CHECK(rel(series, cf) <= 1e-12);
  CHECK(rel(sf::faddeeva_w({2.0, 0.5}), series) <= 1e-10);
}

TEST_CASE("faddeeva_w reflection and conjugation on the disc |z| <= 8") {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const double r = 8.0 * std::sqrt(radius(rng));
    const ComplexValue z = std::polar(r, angle(rng));
    const ComplexValue w = sf::faddeeva_w(z);
    CAPTURE(z);
    // Checked where 2 exp(-z^2) stays in range; elsewhere the identity is a
    // difference of numbers near the overflow threshold.
    if ((z * z).real() > -700.0) {
      const ComplexValue reflected = 2.0 * std::exp(-z * z) - w;
      REQUIRE(std::abs(sf::faddeeva_w(-z) - reflected) <= 1e-9 * std::max(1.0, std::abs(w)));
    }
    REQUIRE(std::abs(sf::faddeeva_w(std::conj(-z)) - std::conj(w)) <= 1e-10 * std::max(1.0, std::abs(w)));
  }
  const ComplexValue z(1.0, 1.0);
  CHECK(std::abs(sf::faddeeva_w(-z) - (2.0 * std::exp(-z * z) - sf::faddeeva_w(z))) <= 1e-14);
}

TEST_CASE("erfcx_real agrees with Re w(ix)") {
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.05 * i;
    const double w = sf::faddeeva_w({0.0, x}).real();
    REQUIRE(std::abs(sf::erfcx_real(x) - w) <= 1e-10 * w);
  }
}

TEST_CASE("scaled_erfi") {
  CHECK(sf::scaled_erfi({0.0, 0.0}) == ComplexValue(0.0, 0.0));

  // Erfi(iy) = i erf(y) and exp(-(iy)^2) = exp(y^2).
  const double y = 0.5;
  const ComplexValue expected(0.0, std::exp(y * y) * std::erf(y));
  CHECK(rel(sf::scaled_erfi({0.0, y}), expected) <= 1e-13);

  for (const auto& s : ref::kScaledErfi) {
    CAPTURE(s.z);
    CHECK(rel(sf::scaled_erfi(s.z), s.value) <= 1e-10);
  }

  for (int i = -400; i <= 400; ++i) {
    const double x = 0.125 * i;
    const ComplexValue v = sf::scaled_erfi({x, 0.0});
    REQUIRE(std::isfinite(v.real()));
    REQUIRE(std::abs(v.imag()) <= 1e-12);
  }
  // Odd in z.
  const ComplexValue z(1.3, -0.4);
  CHECK(std::abs(sf::scaled_erfi(-z) + sf::scaled_erfi(z)) <= 1e-15);
}
