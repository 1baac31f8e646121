#pragma once

#include <array>
#include <vector>

#include "harvest/scenario.hpp"
#include "harvest/specfun.hpp"

// Numerical evaluation of P_D, X and C straight from the regularised Wightman
// function, independent of the closed forms it is used to certify.
//
// Two routes:
//   * double integrals over (tau, tau') with the i*epsilon regulator kept
//     finite, repeated over a schedule of epsilons and extrapolated to 0;
//   * single principal-value integrals over the time difference s, obtained
//     by doing the Gaussian centre-of-mass integral analytically and splitting
//     the regulated kernel into PV and delta parts.
namespace harvest::oracle {

enum class PvTreatment {
  PoleSubtraction,     // subtract g(+-L)/(2L) * h(s -+ L) with h odd, then plain quadrature
  SymmetricExclusion,  // drop (+-L - pv_exclusion, +-L + pv_exclusion); debugging only
};

struct OracleSettings {
  // i*epsilon regulator values in units of sigma, strictly decreasing.
  std::vector<double> epsilon_schedule{0.05, 0.025, 0.0125};
  // Gauss-Legendre order per panel.
  int quadrature_nodes = 64;
  // Integration cutoff in units of sigma; exp(-halfwidth^2 / 4) bounds the tail.
  double domain_halfwidth = 12.0;
  double pv_exclusion = 1e-3;
  // Polynomial degree in epsilon removed by the extrapolation.
  int richardson_order = 2;
  PvTreatment pv_treatment = PvTreatment::PoleSubtraction;
  // Relative gap allowed between the last two epsilon extrapolants.
  double extrapolation_tolerance = 1e-3;
  // Relative change allowed when the PV quadrature order is doubled.
  double refinement_tolerance = 1e-8;

  // Throws DomainError.
  void validate() const;
};

// Regulator schedule, raw integrals and their extrapolation towards epsilon = 0.
struct RegulatorSeries {
  std::vector<double> epsilons;
  std::vector<ComplexValue> raw;
  std::vector<ComplexValue> extrapolants;
  ComplexValue value{};
  double error_estimate = 0.0;
};

// 4x4 density matrix in the basis {gg, ge, eg, ee}.
struct DensityMatrix4 {
  std::array<std::array<ComplexValue, 4>, 4> entries{};

  ComplexValue& operator()(int row, int col) { return entries[row][col]; }
  const ComplexValue& operator()(int row, int col) const { return entries[row][col]; }

  ComplexValue trace() const;
  // max |rho_ij - conj(rho_ji)|
  double hermiticity_defect() const;
  // Largest magnitude among entries outside the X-shaped pattern.
  double sparsity_defect() const;
};

// Transition probability from the epsilon-regulated double integral.
// Throws NonConvergence when the extrapolants disagree or the result keeps an
// imaginary part above 1e-8 relative.
double pd_double_integral(double omega_sigma, double coupling, const OracleSettings& settings);
RegulatorSeries pd_regulated(double omega_sigma, double coupling, const OracleSettings& settings);

// X from the principal-value single integral plus the delta-function term.
// Throws NonConvergence if doubling the quadrature order moves the result by
// more than settings.refinement_tolerance (relative).
ComplexValue x_single_integral_pv(const DetectorPairConfig& cfg, const OracleSettings& settings);

// X from the time-ordered, epsilon-regulated double integral.
ComplexValue x_double_integral(const DetectorPairConfig& cfg, const OracleSettings& settings);
RegulatorSeries x_regulated(const DetectorPairConfig& cfg, const OracleSettings& settings);

// Field correlation C from the principal-value single integral.
ComplexValue c_quadrature(const DetectorPairConfig& cfg, const OracleSettings& settings);

// C from the epsilon-regulated double integral, the independent check on c_quadrature.
ComplexValue c_double_integral(const DetectorPairConfig& cfg, const OracleSettings& settings);
RegulatorSeries c_regulated(const DetectorPairConfig& cfg, const OracleSettings& settings);

// Full report recomputed by quadrature. OracleSingleIntegral uses the PV
// single integrals for X and C, OracleDoubleIntegral the regulated double
// integrals; both take P_A, P_B from pd_double_integral.
HarvestReport harvest_report(const DetectorPairConfig& cfg, const OracleSettings& settings,
                             Method method);

// Density matrix with closed-form P_A, P_B and X and C from c_quadrature.
// Checks Hermiticity, unit trace and the sparsity pattern (Error on failure).
DensityMatrix4 assemble_rho(const DetectorPairConfig& cfg, const OracleSettings& settings);

// 2 max(0, |rho_{gg,ee}| - sqrt(rho_{ge,ge} rho_{eg,eg})). The companion
// |rho_{ge,eg}| - sqrt(rho_{gg,gg} rho_{ee,ee}) branch is left out because
// rho_{ee,ee} is only known to vanish at this order.
double x_state_concurrence(const DensityMatrix4& rho);

namespace detail {

// x_regulated with the two gaps given separately and in either order; the
// pair convention Omega_B >= Omega_A is not enforced.
RegulatorSeries x_regulated_gaps(double omega_first_sigma, double omega_second_sigma,
                                 double l_over_sigma, double coupling,
                                 const OracleSettings& settings);

}  // namespace detail

}  // namespace harvest::oracle
