#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "harvest/analysis.hpp"
#include "harvest/closedform.hpp"
#include "harvest/errors.hpp"

namespace harvest::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + label(values[i]);
  return s;
}

double unit_concurrence(double a, double d, double l) {
  return closedform::concurrence({a, d, l, 1.0}).concurrence;
}

// Concurrence / lambda^2 against L / sigma for several Delta Omega / Omega_A.
Table concurrence_vs_separation(double a, const FigureOptions& opt, RunManifest& m) {
  const std::vector<double> ratios{0.0, 0.2, 0.5, 1.0, 1.2};
  const auto ls = analysis::linspace(0.1, 5.0, opt.points);
  m.add("omega_a_sigma", a);
  m.add("delta_omega_over_omega_a", join(ratios));
  m.add("l_over_sigma_range", "0.1:5");

  Table t;
  t.columns.push_back("l_over_sigma");
  for (const double r : ratios) t.columns.push_back("c_r" + label(r));
  t.notes.push_back("c_r<k>: concurrence / lambda^2 at delta_omega / omega_a = k");
  t.rows.resize(ls.size());
  analysis::parallel_for(ls.size(), opt.threads, [&](std::size_t i) {
    std::vector<double> row{ls[i]};
    for (const double r : ratios) row.push_back(unit_concurrence(a, r * a, ls[i]));
    t.rows[i] = std::move(row);
  });
  return t;
}

// Concurrence / lambda^2 against Delta Omega / Omega_A for several L / sigma,
// with the peak of each curve noted.
Table concurrence_vs_gap(double a, const std::vector<double>& ls, const FigureOptions& opt,
                         RunManifest& m) {
  const auto ratios = analysis::linspace(0.0, 3.0, opt.points);
  m.add("omega_a_sigma", a);
  m.add("l_over_sigma", join(ls));
  m.add("delta_omega_over_omega_a_range", "0:3");

  Table t;
  t.columns.push_back("delta_omega_over_omega_a");
  for (const double l : ls) t.columns.push_back("c_l" + label(l));
  t.notes.push_back("c_l<k>: concurrence / lambda^2 at l_over_sigma = k");
  for (const double l : ls) {
    const auto peak = analysis::find_optimal_gap(a, l, 1.0, 3.0 * a);
    std::string note = "peak l_over_sigma=" + label(l) +
                       " delta_omega_over_omega_a=" + format_double(peak.location / a) +
                       " concurrence_over_lambda2=" + format_double(peak.value);
    if (peak.boundary) note += " (" + peak.note + ")";
    t.notes.push_back(note);
  }
  t.rows.resize(ratios.size());
  analysis::parallel_for(ratios.size(), opt.threads, [&](std::size_t i) {
    std::vector<double> row{ratios[i]};
    for (const double l : ls) row.push_back(unit_concurrence(a, ratios[i] * a, l));
    t.rows[i] = std::move(row);
  });
  return t;
}

// |X|, sqrt(P_A P_B) and their difference against Delta Omega / Omega_A.
Table anatomy(const FigureOptions& opt, RunManifest& m) {
  const double a = 0.5;
  const double l = 2.0;
  const auto ratios = analysis::linspace(0.0, 3.0, opt.points);
  m.add("omega_a_sigma", a);
  m.add("l_over_sigma", l);
  m.add("delta_omega_over_omega_a_range", "0:3");

  Table t;
  t.columns = {"delta_omega_over_omega_a", "abs_x_over_lambda2", "sqrt_pa_pb_over_lambda2",
               "difference_over_lambda2"};
  const auto peak = analysis::find_optimal_gap(a, l, 1.0, 3.0 * a);
  t.notes.push_back("peak delta_omega_over_omega_a=" + format_double(peak.location / a));
  t.rows.resize(ratios.size());
  analysis::parallel_for(ratios.size(), opt.threads, [&](std::size_t i) {
    const auto r = closedform::concurrence({a, ratios[i] * a, l, 1.0});
    const double gm = r.geometric_mean_probability();
    t.rows[i] = {ratios[i], std::abs(r.x), gm, std::abs(r.x) - gm};
  });
  return t;
}

// Delta Omega_p / Omega_A against L / sigma.
Table optimal_gap_curves(const FigureOptions& opt, RunManifest& m) {
  const std::vector<double> gaps{0.2, 0.5, 1.0, 1.2};
  const double gap_bound = 8.0;
  const auto ls = analysis::linspace(0.1, 5.0, opt.points);
  m.add("omega_a_sigma", join(gaps));
  m.add("l_over_sigma_range", "0.1:5");
  m.add("gap_bound", gap_bound);

  Table t;
  t.columns.push_back("l_over_sigma");
  for (const double a : gaps) t.columns.push_back("dp_over_wa_a" + label(a));
  t.notes.push_back("dp_over_wa_a<k>: optimal delta_omega / omega_a at omega_a_sigma = k; "
                    "nan where no gap difference in [0, gap_bound] harvests");
  t.rows.resize(ls.size());
  analysis::parallel_for(ls.size(), opt.threads, [&](std::size_t i) {
    std::vector<double> row{ls[i]};
    for (const double a : gaps) {
      const auto peak = analysis::find_optimal_gap(a, ls[i], 1.0, gap_bound);
      row.push_back(peak.value > 0.0 ? peak.location / a : kNaN);
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

// L_max / sigma against Delta Omega / Omega_A, with identical-detector references.
Table lmax_curves(const FigureOptions& opt, RunManifest& m) {
  const std::vector<double> gaps{0.2, 0.5, 1.0, 1.2};
  const auto ratios = analysis::linspace(0.0, 3.0, opt.points);
  m.add("omega_a_sigma", join(gaps));
  m.add("delta_omega_over_omega_a_range", "0:3");

  Table t;
  t.columns.push_back("delta_omega_over_omega_a");
  for (const double a : gaps) t.columns.push_back("lmax_a" + label(a));
  for (const double a : gaps) {
    t.notes.push_back("reference omega_a_sigma=" + label(a) + " identical l_max=" +
                      format_double(analysis::find_lmax(a, 0.0, 1.0).location));
  }
  t.rows.resize(ratios.size());
  analysis::parallel_for(ratios.size(), opt.threads, [&](std::size_t i) {
    std::vector<double> row{ratios[i]};
    for (const double a : gaps) row.push_back(analysis::find_lmax(a, ratios[i] * a, 1.0).location);
    t.rows[i] = std::move(row);
  });
  return t;
}

}  // namespace

bool is_figure_name(std::string_view name) noexcept {
  return std::find(kFigureNames.begin(), kFigureNames.end(), name) != kFigureNames.end();
}

Table make_figure(std::string_view name, const FigureOptions& options, RunManifest& manifest) {
  if (options.points < 2) throw std::invalid_argument("figures need at least 2 points");
  manifest.add("figure", std::string(name));
  manifest.add("points", std::to_string(options.points));
  if (name == "fig1a") return concurrence_vs_separation(0.5, options, manifest);
  if (name == "fig1b") return concurrence_vs_separation(1.2, options, manifest);
  if (name == "fig2a") return concurrence_vs_gap(0.5, {0.5, 1.0, 2.0, 3.0}, options, manifest);
  if (name == "fig2b") return concurrence_vs_gap(1.2, {1.0, 2.0, 3.0, 3.5, 4.0}, options, manifest);
  if (name == "fig3") return anatomy(options, manifest);
  if (name == "fig4") return optimal_gap_curves(options, manifest);
  if (name == "fig5") return lmax_curves(options, manifest);
  throw std::invalid_argument("unknown figure '" + std::string(name) + "'");
}

}  // namespace harvest::cli
