#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "harvest/scenario.hpp"

// Searches over the closed-form pipeline: the largest harvesting separation,
// the concurrence-maximising gap difference, the identical/non-identical
// crossover, and one-dimensional parameter sweeps.
namespace harvest::analysis {

struct SearchResult {
  double location = 0.0;
  double value = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
  bool converged = false;
  // Set when the answer sits on the edge of the searched interval.
  bool boundary = false;
  std::string note;
};

// Relative bracket width at which find_lmax and find_crossover stop bisecting.
inline constexpr double kRootTolerance = 1e-10;
// Absolute bracket width at which find_optimal_gap stops refining.
inline constexpr double kPeakTolerance = 1e-8;

// Default upper end of the L_max scan: 4 * lmax_large_gap_estimate, at least 10.
double default_lmax_scan_bound(double omega_a_sigma, double delta_omega_sigma);

// Largest L / sigma below scan_bound at which |X| - sqrt(P_A P_B) changes sign,
// located by a downward scan in steps of scan_step and bisection. The result
// does not depend on the coupling. value holds the margin at the root.
// Throws DomainError, NoHarvestingRegion (margin never positive on the grid)
// or BracketingFailure (margin still positive at scan_bound).
SearchResult find_lmax(double omega_a_sigma, double delta_omega_sigma, double coupling,
                       std::optional<double> scan_bound = std::nullopt, double scan_step = 0.01);

// Gap difference Delta Omega sigma in [0, gap_bound] maximising the
// concurrence at fixed Omega_A sigma and L / sigma. The margin is scanned on
// scan_points + 1 equidistant points and the best cell refined by golden
// section to kPeakTolerance. A maximum at 0 or gap_bound is reported with
// boundary = true. value holds the concurrence at the peak.
SearchResult find_optimal_gap(double omega_a_sigma, double l_over_sigma, double coupling,
                              double gap_bound = 8.0, int scan_points = 800);

// Smallest L / sigma in (0, scan_bound] at which the non-identical pair starts
// to harvest more than the identical pair (Omega_B = Omega_A). With
// require_both_positive the clamped concurrences are compared and the note
// says whether the identical pair still harvests there; without it the
// unclamped margins are compared. Throws DomainError or NoCrossover.
SearchResult find_crossover(double omega_a_sigma, double delta_omega_sigma, double coupling,
                            double scan_bound = 10.0, double scan_step = 0.01,
                            bool require_both_positive = true);

enum class SweepAxis { LOverSigma, DeltaOmegaSigma, OmegaASigma };

std::string_view to_string(SweepAxis axis) noexcept;
std::optional<SweepAxis> parse_sweep_axis(std::string_view name) noexcept;

struct SweepSpec {
  SweepAxis axis = SweepAxis::LOverSigma;
  // Strictly increasing or strictly decreasing.
  std::vector<double> values;
  // The swept field is overwritten point by point.
  DetectorPairConfig fixed;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct SweepGrid {
  std::string axis_name;
  std::vector<double> axis_values;
  DetectorPairConfig fixed_params;
  std::vector<HarvestReport> values;
  // Empty where the point evaluated cleanly, otherwise the error message.
  std::vector<std::string> errors;

  std::size_t size() const noexcept { return axis_values.size(); }
  bool ok(std::size_t i) const { return errors[i].empty(); }
};

// Closed-form report at every axis value. Per-point errors are recorded, not
// thrown; a bad axis (empty, non-monotone, non-finite) throws DomainError.
SweepGrid sweep(const SweepSpec& spec);

// Calls body(i) for i in [0, n) on up to `threads` workers (0: hardware
// concurrency). The first exception thrown by a body is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// n equidistant points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace harvest::analysis
