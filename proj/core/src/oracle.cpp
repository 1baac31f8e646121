#include "harvest/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "harvest/closedform.hpp"
#include "harvest/errors.hpp"
#include "harvest/quadrature.hpp"

namespace harvest::oracle {

namespace {

using quadrature::GaussLegendre;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.77245385090551602730;

// Widest panel used away from singular points, in units of sigma.
constexpr double kPanelWidth = 1.0;
// Finest graded panel around a regulated pole, as a fraction of epsilon.
constexpr double kFinestPerEpsilon = 1.0 / 16.0;

std::string describe(const DetectorPairConfig& cfg) {
  std::ostringstream os;
  os.precision(6);
  os << "(omega_a_sigma=" << cfg.omega_a_sigma << ", delta_omega_sigma=" << cfg.delta_omega_sigma
     << ", l_over_sigma=" << cfg.l_over_sigma << ")";
  return os.str();
}

// Integral over tau, tau' in [-H, H]^2 of
//   exp(-(tau^2 + tau'^2)/2) exp(-i (alpha tau + gamma tau')) kernel(tau - tau'),
// computed as a product Gauss rule in s = tau - tau' (graded towards the
// focus points, where the regulated kernel is sharply peaked) and
// v = (tau + tau')/2.
template <class Kernel>
ComplexValue switched_double_integral(double alpha, double gamma, Kernel&& kernel,
                                      std::span<const double> focus, double epsilon,
                                      const OracleSettings& settings) {
  const double h = settings.domain_halfwidth;
  const GaussLegendre s_rule(settings.quadrature_nodes);
  const GaussLegendre v_rule(std::max(16, settings.quadrature_nodes / 2));
  const auto s_breaks =
      quadrature::graded_breakpoints(-h, h, focus, kFinestPerEpsilon * epsilon, kPanelWidth);
  const auto v_breaks = quadrature::graded_breakpoints(-0.5 * h, 0.5 * h, {}, 1.0, 1.5);

  auto inner = [&](double s) {
    auto integrand = [&](double v) {
      const double tau = v + 0.5 * s;
      const double tau_p = v - 0.5 * s;
      return std::exp(ComplexValue(-0.5 * (tau * tau + tau_p * tau_p),
                                   -(alpha * tau + gamma * tau_p)));
    };
    return v_rule.integrate_panels(integrand, v_breaks);
  };
  return s_rule.integrate_panels([&](double s) { return kernel(s, epsilon) * inner(s); },
                                 s_breaks);
}

template <class Kernel>
RegulatorSeries regulated_series(double prefactor, double alpha, double gamma, Kernel&& kernel,
                                 std::span<const double> focus, const OracleSettings& settings) {
  RegulatorSeries series;
  series.epsilons = settings.epsilon_schedule;
  for (const double eps : settings.epsilon_schedule) {
    series.raw.push_back(prefactor *
                         switched_double_integral(alpha, gamma, kernel, focus, eps, settings));
  }
  const auto ex = quadrature::extrapolate_to_zero(series.epsilons, series.raw,
                                                  settings.richardson_order);
  series.extrapolants = ex.sequence;
  series.value = ex.value;
  series.error_estimate = ex.error_estimate;
  return series;
}

void require_converged(const RegulatorSeries& series, const OracleSettings& settings,
                       const std::string& what) {
  if (series.epsilons.size() < 2) return;
  if (!(series.error_estimate <= settings.extrapolation_tolerance * std::abs(series.value))) {
    std::ostringstream os;
    os << what << ": epsilon extrapolants differ by " << series.error_estimate
       << " (value " << std::abs(series.value) << ")";
    throw NonConvergence(os.str());
  }
}

// PV integral of g(s) / (s^2 - L^2) over the real line.
template <class G>
ComplexValue principal_value(G&& g, double l, const OracleSettings& settings, int nodes) {
  const GaussLegendre rule(nodes);
  const double reach = settings.domain_halfwidth + l;

  if (settings.pv_treatment == PvTreatment::PoleSubtraction) {
    const std::array<double, 3> focus{-l, 0.0, l};
    const auto breaks = quadrature::graded_breakpoints(-reach, reach, focus, kPanelWidth, kPanelWidth);
    // h(t) = exp(-t^2)/t is odd, so its PV integral vanishes; subtracting
    // residue * h leaves a bounded integrand.
    const ComplexValue upper = g(l) / (2.0 * l);
    const ComplexValue lower = g(-l) / (2.0 * l);
    auto h = [](double t) { return std::exp(-t * t) / t; };
    auto regular = [&](double s) {
      return g(s) / ((s - l) * (s + l)) - upper * h(s - l) + lower * h(s + l);
    };
    return rule.integrate_panels(regular, breaks);
  }

  // Panels graded geometrically away from the excluded windows keep the
  // 1/(s -+ L) growth towards their edges resolved.
  const double delta = settings.pv_exclusion;
  const std::array<double, 3> focus{-l, 0.0, l};
  const auto breaks = quadrature::graded_breakpoints(-reach, reach, focus, delta, kPanelWidth);
  ComplexValue sum{};
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double mid = 0.5 * (breaks[k] + breaks[k + 1]);
    if (std::abs(std::abs(mid) - l) < delta) continue;
    sum += rule.integrate([&](double s) { return g(s) / ((s - l) * (s + l)); }, breaks[k],
                          breaks[k + 1]);
  }
  return sum;
}

// Evaluates at the configured order and at twice that order; returns the
// refined value after checking the two agree.
template <class Eval>
ComplexValue refined(Eval&& eval, const OracleSettings& settings, const std::string& what) {
  const ComplexValue coarse = eval(settings.quadrature_nodes);
  const ComplexValue fine = eval(2 * settings.quadrature_nodes);
  if (std::abs(coarse - fine) > settings.refinement_tolerance * std::abs(fine)) {
    std::ostringstream os;
    os << what << ": doubling the quadrature order changed the result by "
       << std::abs(coarse - fine) / std::abs(fine) << " (relative)";
    throw NonConvergence(os.str());
  }
  return fine;
}

}  // namespace

void OracleSettings::validate() const {
  if (epsilon_schedule.empty()) throw DomainError("epsilon_schedule must not be empty");
  for (std::size_t k = 0; k < epsilon_schedule.size(); ++k) {
    if (!(epsilon_schedule[k] > 0.0)) throw DomainError("epsilon_schedule entries must be > 0");
    if (k > 0 && !(epsilon_schedule[k] < epsilon_schedule[k - 1]))
      throw DomainError("epsilon_schedule must be strictly decreasing");
  }
  if (quadrature_nodes < 2) throw DomainError("quadrature_nodes must be >= 2");
  if (!(domain_halfwidth >= 8.0)) throw DomainError("domain_halfwidth must be >= 8");
  if (!(pv_exclusion > 0.0)) throw DomainError("pv_exclusion must be > 0");
  if (richardson_order < 0) throw DomainError("richardson_order must be >= 0");
  if (!(extrapolation_tolerance > 0.0) || !(refinement_tolerance > 0.0))
    throw DomainError("tolerances must be > 0");
}

ComplexValue DensityMatrix4::trace() const {
  return entries[0][0] + entries[1][1] + entries[2][2] + entries[3][3];
}

double DensityMatrix4::hermiticity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      worst = std::max(worst, std::abs(entries[r][c] - std::conj(entries[c][r])));
  return worst;
}

double DensityMatrix4::sparsity_defect() const {
  // Non-zero pattern: diagonal, (gg, ee) corners and the (ge, eg) block.
  auto allowed = [](int r, int c) {
    return r == c || (r + c == 3);
  };
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!allowed(r, c)) worst = std::max(worst, std::abs(entries[r][c]));
  return worst;
}

RegulatorSeries pd_regulated(double omega_sigma, double coupling, const OracleSettings& settings) {
  settings.validate();
  if (!std::isfinite(omega_sigma)) throw DomainError("omega_sigma must be finite");
  if (!(coupling > 0.0)) throw DomainError("coupling must be > 0");
  // W at coincident points: -1 / (4 pi^2 (s - i eps)^2).
  auto kernel = [](double s, double eps) {
    const ComplexValue d(s, -eps);
    return 1.0 / (d * d);
  };
  const std::array<double, 1> focus{0.0};
  const double prefactor = -coupling * coupling / (4.0 * kPi * kPi);
  return regulated_series(prefactor, omega_sigma, -omega_sigma, kernel, focus, settings);
}

double pd_double_integral(double omega_sigma, double coupling, const OracleSettings& settings) {
  const RegulatorSeries series = pd_regulated(omega_sigma, coupling, settings);
  require_converged(series, settings, "pd_double_integral");
  if (std::abs(series.value.imag()) > 1e-8 * std::abs(series.value.real())) {
    std::ostringstream os;
    os << "pd_double_integral: imaginary residue " << series.value.imag() << " for real part "
       << series.value.real();
    throw NonConvergence(os.str());
  }
  return series.value.real();
}

RegulatorSeries detail::x_regulated_gaps(double omega_first_sigma, double omega_second_sigma,
                                         double l_over_sigma, double coupling,
                                         const OracleSettings& settings) {
  settings.validate();
  if (!std::isfinite(omega_first_sigma) || !std::isfinite(omega_second_sigma))
    throw DomainError("gaps must be finite");
  if (!(l_over_sigma > 0.0) || !std::isfinite(l_over_sigma))
    throw DomainError("l_over_sigma must be > 0");
  if (!(coupling > 0.0)) throw DomainError("coupling must be > 0");
  const double l = l_over_sigma;
  // Both time orderings put the earlier event's argument at -|s|:
  // W = -1 / (4 pi^2 ((|s| + i eps)^2 - L^2)).
  auto kernel = [l](double s, double eps) {
    const ComplexValue t(std::abs(s), eps);
    return 1.0 / ((t - l) * (t + l));
  };
  const std::array<double, 3> focus{-l, 0.0, l};
  const double prefactor = coupling * coupling / (4.0 * kPi * kPi);
  return regulated_series(prefactor, omega_first_sigma, omega_second_sigma, kernel, focus,
                          settings);
}

RegulatorSeries x_regulated(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  cfg.validate();
  return detail::x_regulated_gaps(cfg.omega_a_sigma, cfg.omega_b_sigma(), cfg.l_over_sigma,
                                  cfg.coupling, settings);
}

ComplexValue x_double_integral(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  const RegulatorSeries series = x_regulated(cfg, settings);
  require_converged(series, settings, "x_double_integral " + describe(cfg));
  return series.value;
}

RegulatorSeries c_regulated(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  cfg.validate();
  settings.validate();
  const double l = cfg.l_over_sigma;
  auto kernel = [l](double s, double eps) {
    const ComplexValue t(s, -eps);
    return 1.0 / ((t - l) * (t + l));
  };
  const std::array<double, 3> focus{-l, 0.0, l};
  const double prefactor = -cfg.coupling * cfg.coupling / (4.0 * kPi * kPi);
  return regulated_series(prefactor, cfg.omega_a_sigma, -cfg.omega_b_sigma(), kernel, focus,
                          settings);
}

ComplexValue c_double_integral(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  const RegulatorSeries series = c_regulated(cfg, settings);
  require_converged(series, settings, "c_double_integral " + describe(cfg));
  return series.value;
}

ComplexValue x_single_integral_pv(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  cfg.validate();
  settings.validate();
  const double d = cfg.delta_omega_sigma;
  const double l = cfg.l_over_sigma;
  const double sum = 2.0 * cfg.omega_a_sigma + d;
  const double lam2 = cfg.coupling * cfg.coupling;

  auto g = [d](double s) {
    return std::exp(ComplexValue(-0.25 * s * s, -0.5 * d * s));
  };
  const double pv_prefactor = lam2 / (4.0 * kPi * kSqrtPi) * std::exp(-0.25 * sum * sum);
  const ComplexValue delta_term(
      0.0, -lam2 / (4.0 * kSqrtPi * l) * std::exp(-0.25 * (sum * sum + l * l)) *
               std::cos(0.5 * d * l));

  auto eval = [&](int nodes) {
    return pv_prefactor * principal_value(g, l, settings, nodes) + delta_term;
  };
  return refined(eval, settings, "x_single_integral_pv " + describe(cfg));
}

ComplexValue c_quadrature(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  cfg.validate();
  settings.validate();
  const double d = cfg.delta_omega_sigma;
  const double l = cfg.l_over_sigma;
  const double sum = 2.0 * cfg.omega_a_sigma + d;
  const double lam2 = cfg.coupling * cfg.coupling;

  auto g = [sum](double s) {
    return std::exp(ComplexValue(-0.25 * s * s, -0.5 * sum * s));
  };
  const double prefactor = -lam2 / (4.0 * kPi * kSqrtPi) * std::exp(-0.25 * d * d);
  // (i pi / 2L) [g(L) - g(-L)]
  const double delta_term = kPi / l * std::exp(-0.25 * l * l) * std::sin(0.5 * sum * l);

  auto eval = [&](int nodes) {
    return prefactor * (principal_value(g, l, settings, nodes) + delta_term);
  };
  return refined(eval, settings, "c_quadrature " + describe(cfg));
}

HarvestReport harvest_report(const DetectorPairConfig& cfg, const OracleSettings& settings,
                             Method method) {
  cfg.validate();
  HarvestReport report;
  report.method = method;
  report.p_a = pd_double_integral(cfg.omega_a_sigma, cfg.coupling, settings);
  report.p_b = pd_double_integral(cfg.omega_b_sigma(), cfg.coupling, settings);
  switch (method) {
    case Method::OracleDoubleIntegral:
      report.x = x_double_integral(cfg, settings);
      report.c_corr = c_double_integral(cfg, settings);
      break;
    case Method::OracleSingleIntegral:
    case Method::ClosedForm:
      report.method = Method::OracleSingleIntegral;
      report.x = x_single_integral_pv(cfg, settings);
      report.c_corr = c_quadrature(cfg, settings);
      break;
  }
  report.concurrence = concurrence_from(report.p_a, report.p_b, report.x);
  return report;
}

DensityMatrix4 assemble_rho(const DetectorPairConfig& cfg, const OracleSettings& settings) {
  cfg.validate();
  const double p_a = closedform::transition_probability(cfg.omega_a_sigma, cfg.coupling);
  const double p_b = closedform::transition_probability(cfg.omega_b_sigma(), cfg.coupling);
  const ComplexValue x = closedform::correlation_x(cfg);
  const ComplexValue c = c_quadrature(cfg, settings);

  DensityMatrix4 rho;
  rho(0, 0) = 1.0 - p_a - p_b;
  rho(0, 3) = x;
  rho(1, 1) = p_b;
  rho(1, 2) = c;
  rho(2, 1) = std::conj(c);
  rho(2, 2) = p_a;
  rho(3, 0) = std::conj(x);

  if (rho.hermiticity_defect() > 1e-10 || std::abs(rho.trace() - 1.0) > 1e-10 ||
      rho.sparsity_defect() > 1e-12) {
    throw Error("assemble_rho: density matrix invariants violated for " + describe(cfg));
  }
  return rho;
}

double x_state_concurrence(const DensityMatrix4& rho) {
  const double gm = std::sqrt(rho(1, 1).real() * rho(2, 2).real());
  return 2.0 * std::max(0.0, std::abs(rho(0, 3)) - gm);
}

}  // namespace harvest::oracle
