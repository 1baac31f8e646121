#include <cmath>
#include <numbers>

#include "doctest.h"
#include "harvest/analysis.hpp"
#include "harvest/asymptotics.hpp"
#include "harvest/closedform.hpp"

using harvest::ComplexValue;
using harvest::DetectorPairConfig;
namespace cf = harvest::closedform;

namespace {

constexpr double kPi = std::numbers::pi;

double gm_deviation(const DetectorPairConfig& cfg, cf::GapRegime regime) {
  const double exact = cf::concurrence(cfg).geometric_mean_probability();
  return std::abs(cf::asymptotic_gm_probability(cfg, regime) - exact) / exact;
}

double x_deviation(const DetectorPairConfig& cfg, cf::SeparationRegime regime) {
  const ComplexValue exact = cf::correlation_x(cfg);
  return std::abs(cf::asymptotic_x(cfg, regime) - exact) / std::abs(exact);
}

double concurrence_deviation(const DetectorPairConfig& cfg, cf::ConcurrenceRegime regime) {
  const double exact = cf::concurrence(cfg).concurrence;
  return std::abs(cf::asymptotic_concurrence(cfg, regime) - exact) / exact;
}

}  // namespace

TEST_CASE("geometric-mean probability, small gaps") {
  const DetectorPairConfig zero{0.0, 0.0, 1.0, 0.1};
  CHECK(cf::asymptotic_gm_probability(zero, cf::GapRegime::SmallGaps) ==
        doctest::Approx(0.01 / (4.0 * kPi)).epsilon(1e-15));

  // The form drops the first-order term -sqrt(pi) Omega sigma of each
  // probability, so its error is sqrt(pi)(a + b)/2 to leading order and only
  // falls below 1% once a + b is below about 0.011.
  const DetectorPairConfig small{0.05, 0.05, 1.0, 0.1};
  const double first_order = std::sqrt(kPi) * (0.05 + 0.1) / 2.0;
  CHECK(std::abs(gm_deviation(small, cf::GapRegime::SmallGaps) - first_order) <= 0.01);
  CHECK(gm_deviation({0.002, 0.002, 1.0, 0.1}, cf::GapRegime::SmallGaps) <= 0.01);
  CHECK(gm_deviation({0.01, 0.01, 1.0, 0.1}, cf::GapRegime::SmallGaps) <
        gm_deviation(small, cf::GapRegime::SmallGaps));
}

TEST_CASE("geometric-mean probability, large gaps") {
  CHECK(gm_deviation({5.0, 0.0, 1.0, 0.1}, cf::GapRegime::LargeGaps) <= 0.01);
  CHECK(gm_deviation({8.0, 2.0, 1.0, 0.1}, cf::GapRegime::LargeGaps) <
        gm_deviation({5.0, 0.0, 1.0, 0.1}, cf::GapRegime::LargeGaps));
}

TEST_CASE("X, small separation") {
  const DetectorPairConfig cfg{0.5, 0.0, 0.3, 0.1};
  const ComplexValue bracket(1.0 / std::sqrt(kPi), 1.0 / cfg.l_over_sigma);
  const ComplexValue expected =
      -cfg.coupling * cfg.coupling * std::exp(-0.25) / (4.0 * std::sqrt(kPi)) * bracket;
  CHECK(std::abs(cf::asymptotic_x(cfg, cf::SeparationRegime::SmallSeparation) - expected) <=
        1e-15 * std::abs(expected));

  CHECK(x_deviation({0.5, 0.0, 0.02, 0.1}, cf::SeparationRegime::SmallSeparation) <= 0.02);
  CHECK(x_deviation({0.5, 0.25, 0.02, 0.1}, cf::SeparationRegime::SmallSeparation) <= 0.02);
}

TEST_CASE("X, large separation") {
  CHECK(x_deviation({1.0, 0.5, 10.0, 0.1}, cf::SeparationRegime::LargeSeparation) <= 0.05);
}

TEST_CASE("concurrence, small separation") {
  for (const double d : {0.0, 0.25}) {
    CAPTURE(d);
    CHECK(concurrence_deviation({0.5, d, 0.02, 0.1}, cf::ConcurrenceRegime::SmallSeparation) <= 0.03);
  }
}

TEST_CASE("concurrence, large separation and small gaps is clamped beyond sqrt(2)") {
  for (const double l : {std::sqrt(2.0), 1.5, 3.0, 10.0}) {
    CHECK(cf::asymptotic_concurrence({0.1, 0.1, l, 0.1}, cf::ConcurrenceRegime::LargeSeparationSmallGaps) == 0.0);
  }
  CHECK(cf::asymptotic_concurrence({0.1, 0.1, 1.2, 0.1}, cf::ConcurrenceRegime::LargeSeparationSmallGaps) > 0.0);
}

TEST_CASE("concurrence, large separation and large gaps") {
  const auto regime = cf::ConcurrenceRegime::LargeSeparationLargeGaps;
  // At Omega_A sigma = 3 the form is positive below the estimate but stays
  // more than 10% off everywhere; agreement improves steadily with the gap.
  const DetectorPairConfig moderate{3.0, 1.0, 0.9 * cf::lmax_large_gap_estimate(3.0, 1.0), 0.1};
  CHECK(cf::asymptotic_concurrence(moderate, regime) > 0.0);
  const DetectorPairConfig large{8.0, 1.0, 0.8 * cf::lmax_large_gap_estimate(8.0, 1.0), 0.1};
  CHECK(cf::asymptotic_concurrence(large, regime) > 0.0);
  CHECK(concurrence_deviation(large, regime) <= 0.10);
  CHECK(concurrence_deviation(large, regime) < concurrence_deviation(moderate, regime));
}

TEST_CASE("L_max large-gap estimate") {
  CHECK(cf::lmax_large_gap_estimate(4.0, 0.0) == 8.0);
  CHECK(cf::lmax_large_gap_estimate(3.0, 1.0) > cf::lmax_large_gap_estimate(3.0, 0.0));
  for (const double d : {0.0, 2.0}) {
    const double root = harvest::analysis::find_lmax(4.0, d, 0.1).location;
    CHECK(std::abs(cf::lmax_large_gap_estimate(4.0, d) - root) <= 0.10 * root);
  }
}

TEST_CASE("concurrence gap-derivative estimate") {
  CHECK(cf::concurrence_gap_derivative_estimate({0.5, 0.0, 100.0, 0.1}) > 0.0);
  CHECK(cf::concurrence_gap_derivative_estimate({0.5, 0.0, 0.1, 0.1}) < 0.0);

  // Zero of the estimate in Delta Omega sigma at (0.5, L/sigma = 2) by bisection.
  auto est = [](double d) { return cf::concurrence_gap_derivative_estimate({0.5, d, 2.0, 0.1}); };
  double lo = 0.0;
  double hi = 3.0;
  REQUIRE(est(lo) > 0.0);
  REQUIRE(est(hi) < 0.0);
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (est(mid) > 0.0 ? lo : hi) = mid;
  }
  const double peak = harvest::analysis::find_optimal_gap(0.5, 2.0, 0.1).location;
  CHECK(std::abs(lo - peak) <= 0.25 * peak);
}
