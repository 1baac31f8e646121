#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "figures.hpp"
#include "harvest/analysis.hpp"
#include "harvest/asymptotics.hpp"
#include "harvest/closedform.hpp"
#include "harvest/errors.hpp"
#include "harvest/oracle.hpp"
#include "harvest/version.hpp"
#include "output.hpp"

namespace harvest::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  double lambda = 0.1;
  std::string out_path;
  std::string format;
  unsigned threads = 0;
  int quad_nodes = 64;
  std::string eps_schedule = "0.05,0.025,0.0125";
};

struct EvalOptions {
  double omega_a = 0.0;
  std::optional<double> delta_omega;
  std::optional<double> omega_b;
  double l = 1.0;
  std::string method = "closed-form";
};

struct VerifyOptions {
  int grid = 3;
  std::optional<double> tolerance;
  bool skip_double = false;
};

struct SweepOptions {
  std::string axis;
  double from = 0.1;
  double to = 5.0;
  std::size_t points = 400;
  double omega_a = 0.5;
  double delta_omega = 0.0;
  double l = 1.0;
};

struct LmaxOptions {
  double omega_a = 0.0;
  double delta_omega = 0.0;
  std::optional<double> scan_bound;
  double scan_step = 0.01;
};

struct PeakOptions {
  double omega_a = 0.0;
  double l = 1.0;
  double gap_bound = 8.0;
  int scan_points = 800;
};

struct CrossoverOptions {
  double omega_a = 0.0;
  double delta_omega = 0.0;
  double scan_bound = 10.0;
  double scan_step = 0.01;
  bool allow_nonharvesting = false;
};

struct FigureCommand {
  std::string name;
  std::size_t points = 400;
};

oracle::OracleSettings oracle_settings(const GlobalOptions& g) {
  oracle::OracleSettings s;
  s.quadrature_nodes = g.quad_nodes;
  s.epsilon_schedule.clear();
  std::stringstream ss(g.eps_schedule);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') throw UsageError("--eps-schedule: bad number '" + item + "'");
    s.epsilon_schedule.push_back(v);
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw UsageError(std::string("oracle settings: ") + e.what());
  }
  return s;
}

void add_oracle_params(RunManifest& m, const GlobalOptions& g) {
  m.add("quad_nodes", std::to_string(g.quad_nodes));
  m.add("eps_schedule", g.eps_schedule);
}

double rel_error(ComplexValue got, ComplexValue want) {
  return std::abs(got - want) / std::abs(want);
}

Table eval_command(const EvalOptions& o, const GlobalOptions& g, RunManifest& m) {
  double delta = o.delta_omega.value_or(0.0);
  if (o.omega_b) {
    if (*o.omega_b < o.omega_a)
      throw UsageError("--omega-b must not be below --omega-a (the gap difference is >= 0)");
    delta = *o.omega_b - o.omega_a;
  }
  const DetectorPairConfig cfg{o.omega_a, delta, o.l, g.lambda};
  m.add("omega_a_sigma", cfg.omega_a_sigma);
  m.add("delta_omega_sigma", cfg.delta_omega_sigma);
  m.add("l_over_sigma", cfg.l_over_sigma);
  m.add("lambda", cfg.coupling);
  m.add("method", o.method);

  HarvestReport r;
  if (o.method == "closed-form") {
    r = closedform::concurrence(cfg);
  } else {
    cfg.validate();
    add_oracle_params(m, g);
    const auto method = o.method == "oracle-single" ? Method::OracleSingleIntegral
                                                    : Method::OracleDoubleIntegral;
    r = oracle::harvest_report(cfg, oracle_settings(g), method);
  }

  Table t;
  t.columns = {"omega_a_sigma", "delta_omega_sigma", "l_over_sigma", "lambda", "p_a", "p_b",
               "re_x", "im_x", "abs_x", "sqrt_pa_pb", "concurrence", "concurrence_over_lambda2"};
  const double lam2 = cfg.coupling * cfg.coupling;
  std::vector<double> row{cfg.omega_a_sigma, cfg.delta_omega_sigma, cfg.l_over_sigma, cfg.coupling,
                          r.p_a, r.p_b, r.x.real(), r.x.imag(), std::abs(r.x),
                          r.geometric_mean_probability(), r.concurrence, r.concurrence / lam2};
  if (r.c_corr) {
    t.columns.insert(t.columns.end(), {"re_c", "im_c"});
    row.insert(row.end(), {r.c_corr->real(), r.c_corr->imag()});
  }
  if (!cfg.coupling_is_perturbative()) t.notes.push_back("warning: lambda above 0.3 is outside the perturbative range");
  t.rows.push_back(std::move(row));
  return t;
}

struct VerifyOutcome {
  Table table;
  bool passed = true;
};

VerifyOutcome verify_command(const VerifyOptions& o, const GlobalOptions& g, RunManifest& m,
                             std::ostream& err) {
  const oracle::OracleSettings settings = oracle_settings(g);
  const double tol_single = o.tolerance.value_or(1e-8);
  const double tol_double = o.tolerance.value_or(1e-3);
  const double tol_p = o.tolerance.value_or(1e-4);
  const double tol_rho = o.tolerance.value_or(1e-6);
  m.add("grid", std::to_string(o.grid));
  m.add("lambda", g.lambda);
  m.add("tolerance_x_single", tol_single);
  m.add("tolerance_x_double", o.skip_double ? std::string("skipped") : format_double(tol_double));
  m.add("tolerance_p", tol_p);
  m.add("tolerance_rho", tol_rho);
  add_oracle_params(m, g);

  const std::vector<double> gaps{0.2, 0.5, 1.2};
  const std::vector<double> ratios{0.0, 0.5, 1.2};
  const std::vector<double> seps{0.5, 2.0, 6.0};
  std::vector<DetectorPairConfig> grid;
  for (int i = 0; i < o.grid; ++i)
    for (int j = 0; j < o.grid; ++j)
      for (int k = 0; k < o.grid; ++k) grid.push_back({gaps[i], ratios[j] * gaps[i], seps[k], g.lambda});

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  VerifyOutcome outcome;
  Table& t = outcome.table;
  t.columns = {"omega_a_sigma", "delta_omega_sigma", "l_over_sigma", "err_x_single",
               "err_x_double", "err_p_a", "err_p_b", "err_rho_concurrence", "pass"};
  t.notes.push_back("errors are relative; err_rho_concurrence is relative to 2|X|");
  t.rows.assign(grid.size(), {});
  std::vector<std::string> failures(grid.size());

  analysis::parallel_for(grid.size(), resolve_threads(g.threads), [&](std::size_t i) {
    const DetectorPairConfig& cfg = grid[i];
    std::vector<double> row{cfg.omega_a_sigma, cfg.delta_omega_sigma, cfg.l_over_sigma,
                            kNaN, kNaN, kNaN, kNaN, kNaN, 0.0};
    bool ok = true;
    try {
      const HarvestReport exact = closedform::concurrence(cfg);
      row[3] = rel_error(oracle::x_single_integral_pv(cfg, settings), exact.x);
      ok &= row[3] <= tol_single;
      if (!o.skip_double) {
        row[4] = rel_error(oracle::x_double_integral(cfg, settings), exact.x);
        ok &= row[4] <= tol_double;
      }
      row[5] = std::abs(oracle::pd_double_integral(cfg.omega_a_sigma, cfg.coupling, settings) - exact.p_a) / exact.p_a;
      row[6] = std::abs(oracle::pd_double_integral(cfg.omega_b_sigma(), cfg.coupling, settings) - exact.p_b) / exact.p_b;
      ok &= row[5] <= tol_p && row[6] <= tol_p;
      const auto rho = oracle::assemble_rho(cfg, settings);
      row[7] = std::abs(oracle::x_state_concurrence(rho) - exact.concurrence) / (2.0 * std::abs(exact.x));
      ok &= row[7] <= tol_rho;
    } catch (const std::exception& e) {
      ok = false;
      failures[i] = e.what();
    }
    row[8] = ok ? 1.0 : 0.0;
    t.rows[i] = std::move(row);
  });

  std::size_t passed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (t.rows[i][8] == 1.0) {
      ++passed;
      continue;
    }
    outcome.passed = false;
    const auto& cfg = grid[i];
    err << "verify: tolerance breach at omega_a_sigma=" << format_double(cfg.omega_a_sigma)
        << " delta_omega_sigma=" << format_double(cfg.delta_omega_sigma)
        << " l_over_sigma=" << format_double(cfg.l_over_sigma);
    if (!failures[i].empty()) err << " (" << failures[i] << ")";
    err << '\n';
  }
  const std::string summary = "verify: " + std::to_string(passed) + "/" + std::to_string(grid.size()) +
                              " points within tolerance";
  t.notes.push_back(summary);
  err << summary << '\n';
  return outcome;
}

Table sweep_command(const SweepOptions& o, const GlobalOptions& g, RunManifest& m) {
  const auto axis = analysis::parse_sweep_axis(o.axis);
  if (!axis) throw UsageError("--axis must be one of l, delta-omega, omega-a");
  if (o.points < 1) throw UsageError("--points must be >= 1");
  analysis::SweepSpec spec;
  spec.axis = *axis;
  spec.values = o.points == 1 ? std::vector<double>{o.from} : analysis::linspace(o.from, o.to, o.points);
  spec.fixed = {o.omega_a, o.delta_omega, o.l, g.lambda};
  spec.threads = resolve_threads(g.threads);
  m.add("axis", std::string(analysis::to_string(spec.axis)));
  m.add("from", o.from);
  m.add("to", o.to);
  m.add("points", std::to_string(o.points));
  if (spec.axis != analysis::SweepAxis::OmegaASigma) m.add("omega_a_sigma", o.omega_a);
  if (spec.axis != analysis::SweepAxis::DeltaOmegaSigma) m.add("delta_omega_sigma", o.delta_omega);
  if (spec.axis != analysis::SweepAxis::LOverSigma) m.add("l_over_sigma", o.l);
  m.add("lambda", g.lambda);

  const auto grid = analysis::sweep(spec);
  Table t;
  t.columns = {grid.axis_name, "p_a", "p_b", "re_x", "im_x", "abs_x", "sqrt_pa_pb", "concurrence",
               "concurrence_over_lambda2"};
  const double lam2 = g.lambda * g.lambda;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& r = grid.values[i];
    t.rows.push_back({grid.axis_values[i], r.p_a, r.p_b, r.x.real(), r.x.imag(), std::abs(r.x),
                      r.geometric_mean_probability(), r.concurrence, r.concurrence / lam2});
    if (!grid.ok(i)) t.notes.push_back("point " + std::to_string(i) + ": " + grid.errors[i]);
  }
  return t;
}

Table lmax_command(const LmaxOptions& o, const GlobalOptions& g, RunManifest& m) {
  m.add("omega_a_sigma", o.omega_a);
  m.add("delta_omega_sigma", o.delta_omega);
  m.add("scan_bound", o.scan_bound ? format_double(*o.scan_bound) : std::string("default"));
  m.add("scan_step", o.scan_step);
  m.add("lambda", g.lambda);
  const auto r = analysis::find_lmax(o.omega_a, o.delta_omega, g.lambda, o.scan_bound, o.scan_step);
  Table t;
  t.columns = {"omega_a_sigma", "delta_omega_sigma", "l_max_over_sigma", "large_gap_estimate",
               "bracket_lo", "bracket_hi", "iterations", "converged"};
  t.rows.push_back({o.omega_a, o.delta_omega, r.location,
                    closedform::lmax_large_gap_estimate(o.omega_a, o.delta_omega), r.bracket.first,
                    r.bracket.second, static_cast<double>(r.iterations), r.converged ? 1.0 : 0.0});
  return t;
}

Table peak_command(const PeakOptions& o, const GlobalOptions& g, RunManifest& m) {
  m.add("omega_a_sigma", o.omega_a);
  m.add("l_over_sigma", o.l);
  m.add("gap_bound", o.gap_bound);
  m.add("scan_points", std::to_string(o.scan_points));
  m.add("lambda", g.lambda);
  const auto r = analysis::find_optimal_gap(o.omega_a, o.l, g.lambda, o.gap_bound, o.scan_points);
  Table t;
  t.columns = {"omega_a_sigma", "l_over_sigma", "delta_omega_p", "delta_omega_p_over_omega_a",
               "concurrence", "concurrence_over_lambda2", "boundary", "iterations", "converged"};
  const double ratio = o.omega_a > 0.0 ? r.location / o.omega_a : std::numeric_limits<double>::quiet_NaN();
  t.rows.push_back({o.omega_a, o.l, r.location, ratio, r.value, r.value / (g.lambda * g.lambda),
                    r.boundary ? 1.0 : 0.0, static_cast<double>(r.iterations), r.converged ? 1.0 : 0.0});
  if (!r.note.empty()) t.notes.push_back("note: " + r.note);
  return t;
}

Table crossover_command(const CrossoverOptions& o, const GlobalOptions& g, RunManifest& m) {
  m.add("omega_a_sigma", o.omega_a);
  m.add("delta_omega_sigma", o.delta_omega);
  m.add("scan_bound", o.scan_bound);
  m.add("scan_step", o.scan_step);
  m.add("require_both_positive", o.allow_nonharvesting ? "false" : "true");
  m.add("lambda", g.lambda);
  const auto r = analysis::find_crossover(o.omega_a, o.delta_omega, g.lambda, o.scan_bound,
                                          o.scan_step, !o.allow_nonharvesting);
  Table t;
  t.columns = {"omega_a_sigma", "delta_omega_sigma", "l_crossover_over_sigma", "bracket_lo",
               "bracket_hi", "concurrence_over_lambda2", "iterations", "converged"};
  t.rows.push_back({o.omega_a, o.delta_omega, r.location, r.bracket.first, r.bracket.second,
                    r.value / (g.lambda * g.lambda), static_cast<double>(r.iterations),
                    r.converged ? 1.0 : 0.0});
  if (!r.note.empty()) t.notes.push_back("note: " + r.note);
  return t;
}

Format resolve_format(const std::string& requested, Format fallback) {
  if (requested.empty()) return fallback;
  if (requested == "table") return Format::Table;
  if (requested == "csv") return Format::Csv;
  return Format::Record;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* cap = std::getenv("HARVEST_MAX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement harvesting by two static detectors with different energy gaps.\n"
               "All quantities are rescaled by the switching width sigma.",
               "harvest"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--lambda", g.lambda, "Coupling lambda")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out_path, "Write results to this file instead of stdout");
  app.add_option("--format", g.format,
                 "Output format: table, csv or record (JSON); default csv for sweep and figure, table otherwise")
      ->check(CLI::IsMember({"table", "csv", "record"}));
  app.add_option("--threads", g.threads, "Worker threads, 0 for all cores (capped by HARVEST_MAX_THREADS)")
      ->capture_default_str();
  app.add_option("--quad-nodes", g.quad_nodes, "Gauss-Legendre order per panel for the oracles")
      ->capture_default_str()
      ->check(CLI::Range(2, 4096));
  app.add_option("--eps-schedule", g.eps_schedule, "Comma-separated decreasing i*epsilon regulator values")
      ->capture_default_str();

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Transition probabilities, X and concurrence for one scenario");
  eval_cmd->add_option("--omega-a", eval.omega_a, "Gap of detector A, Omega_A sigma")->required();
  auto* delta_opt = eval_cmd->add_option("--delta-omega", eval.delta_omega, "Gap difference (Omega_B - Omega_A) sigma [0]");
  auto* omega_b_opt = eval_cmd->add_option("--omega-b", eval.omega_b, "Gap of detector B, Omega_B sigma (>= Omega_A sigma)");
  delta_opt->excludes(omega_b_opt);
  eval_cmd->add_option("--l", eval.l, "Separation L / sigma")->required();
  eval_cmd->add_option("--method", eval.method, "closed-form, oracle-single or oracle-double")
      ->capture_default_str()
      ->check(CLI::IsMember({"closed-form", "oracle-single", "oracle-double"}));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Closed forms against the quadrature oracles");
  verify_cmd->add_option("--grid", verify.grid,
                         "Points per axis of Omega_A sigma {0.2,0.5,1.2} x dOmega/Omega_A {0,0.5,1.2} x L/sigma {0.5,2,6}")
      ->capture_default_str()
      ->check(CLI::Range(1, 3));
  verify_cmd->add_option("--tolerance", verify.tolerance,
                         "One relative tolerance for every check (defaults: X single 1e-8, X double 1e-3, P 1e-4, rho 1e-6)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--skip-double", verify.skip_double, "Skip the slow double-integral X check");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Closed-form results along one parameter axis");
  sweep_cmd->add_option("--axis", sweep.axis, "l, delta-omega or omega-a")
      ->required()
      ->check(CLI::IsMember({"l", "delta-omega", "omega-a"}));
  sweep_cmd->add_option("--from", sweep.from, "First axis value")->capture_default_str();
  sweep_cmd->add_option("--to", sweep.to, "Last axis value")->capture_default_str();
  sweep_cmd->add_option("--points", sweep.points, "Number of axis points")->capture_default_str();
  sweep_cmd->add_option("--omega-a", sweep.omega_a, "Omega_A sigma when not swept")->capture_default_str();
  sweep_cmd->add_option("--delta-omega", sweep.delta_omega, "Delta Omega sigma when not swept")->capture_default_str();
  sweep_cmd->add_option("--l", sweep.l, "L / sigma when not swept")->capture_default_str();

  LmaxOptions lmax;
  auto* lmax_cmd = app.add_subcommand("lmax", "Largest separation with harvesting");
  lmax_cmd->add_option("--omega-a", lmax.omega_a, "Omega_A sigma")->required();
  lmax_cmd->add_option("--delta-omega", lmax.delta_omega, "Delta Omega sigma")->capture_default_str();
  lmax_cmd->add_option("--scan-bound", lmax.scan_bound,
                       "Upper end of the downward scan [max(10, 4 * 2 sqrt(Omega_A (Omega_A + Delta Omega)))]");
  lmax_cmd->add_option("--scan-step", lmax.scan_step, "Scan step in L / sigma")->capture_default_str();

  PeakOptions peak;
  auto* peak_cmd = app.add_subcommand("peak", "Gap difference that maximises the concurrence");
  peak_cmd->add_option("--omega-a", peak.omega_a, "Omega_A sigma")->required();
  peak_cmd->add_option("--l", peak.l, "L / sigma")->required();
  peak_cmd->add_option("--gap-bound", peak.gap_bound, "Upper end of the Delta Omega sigma scan")->capture_default_str();
  peak_cmd->add_option("--scan-points", peak.scan_points, "Coarse scan cells")->capture_default_str();

  CrossoverOptions cross;
  auto* cross_cmd = app.add_subcommand("crossover", "Separation beyond which the non-identical pair harvests more");
  cross_cmd->add_option("--omega-a", cross.omega_a, "Omega_A sigma")->required();
  cross_cmd->add_option("--delta-omega", cross.delta_omega, "Delta Omega sigma (> 0)")->required();
  cross_cmd->add_option("--scan-bound", cross.scan_bound, "Upper end of the upward scan")->capture_default_str();
  cross_cmd->add_option("--scan-step", cross.scan_step, "Scan step in L / sigma")->capture_default_str();
  cross_cmd->add_flag("--allow-nonharvesting", cross.allow_nonharvesting,
                      "Compare unclamped margins instead of concurrences");

  FigureCommand figure;
  auto* figure_cmd = app.add_subcommand("figure", "Data behind one of the figures fig1a..fig5");
  figure_cmd->add_option("name", figure.name, "fig1a, fig1b, fig2a, fig2b, fig3, fig4 or fig5")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(kFigureNames.begin(), kFigureNames.end())));
  figure_cmd->add_option("--points", figure.points, "Points along the figure's axis")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.tool_version = kVersion;
  manifest.timestamp = iso_timestamp_utc();

  Table table;
  Format fallback = Format::Table;
  int code = kExitOk;
  try {
    if (eval_cmd->parsed()) {
      manifest.command = "eval";
      table = eval_command(eval, g, manifest);
    } else if (verify_cmd->parsed()) {
      manifest.command = "verify";
      auto outcome = verify_command(verify, g, manifest, err);
      table = std::move(outcome.table);
      if (!outcome.passed) code = kExitVerifyFailed;
    } else if (sweep_cmd->parsed()) {
      manifest.command = "sweep";
      fallback = Format::Csv;
      table = sweep_command(sweep, g, manifest);
    } else if (lmax_cmd->parsed()) {
      manifest.command = "lmax";
      table = lmax_command(lmax, g, manifest);
    } else if (peak_cmd->parsed()) {
      manifest.command = "peak";
      table = peak_command(peak, g, manifest);
    } else if (cross_cmd->parsed()) {
      manifest.command = "crossover";
      table = crossover_command(cross, g, manifest);
    } else if (figure_cmd->parsed()) {
      manifest.command = "figure";
      fallback = Format::Csv;
      FigureOptions fo;
      fo.points = figure.points;
      fo.threads = resolve_threads(g.threads);
      table = make_figure(figure.name, fo, manifest);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NoHarvestingRegion& e) {
    err << "no harvesting: " << e.what() << '\n';
    return kExitNoHarvesting;
  } catch (const NoCrossover& e) {
    err << "no crossover: " << e.what() << '\n';
    return kExitNoCrossover;
  } catch (const BracketingFailure& e) {
    err << "bracketing failure: " << e.what() << " (L_max > " << format_double(e.lower_bound()) << ")\n";
    return kExitBracketing;
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }

  const Format format = resolve_format(g.format, fallback);
  if (g.out_path.empty()) {
    write_output(out, manifest, table, format);
  } else {
    std::ofstream file(g.out_path);
    if (!file) {
      err << "error: cannot open " << g.out_path << " for writing\n";
      return kExitInternal;
    }
    write_output(file, manifest, table, format);
    if (!file) {
      err << "error: write to " << g.out_path << " failed\n";
      return kExitInternal;
    }
  }
  return code;
}

}  // namespace harvest::cli
