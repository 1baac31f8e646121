#include "harvest/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "harvest/asymptotics.hpp"
#include "harvest/closedform.hpp"
#include "harvest/errors.hpp"

namespace harvest::analysis {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxBisections = 200;

// Margin |X| - sqrt(P_A P_B) at unit coupling; every search works on this so
// that search results do not depend on lambda.
double unit_margin(double a, double d, double l) {
  return closedform::harvesting_margin({a, d, l, 1.0});
}

double unit_concurrence(double a, double d, double l) {
  return closedform::concurrence({a, d, l, 1.0}).concurrence;
}

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

void check_pair(double a, double d, double coupling) {
  DetectorPairConfig{a, d, 1.0, coupling}.validate();
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double default_lmax_scan_bound(double omega_a_sigma, double delta_omega_sigma) {
  return std::max(10.0, 4.0 * closedform::lmax_large_gap_estimate(omega_a_sigma, delta_omega_sigma));
}

SearchResult find_lmax(double omega_a_sigma, double delta_omega_sigma, double coupling,
                       std::optional<double> scan_bound, double scan_step) {
  check_pair(omega_a_sigma, delta_omega_sigma, coupling);
  const double bound = scan_bound.value_or(default_lmax_scan_bound(omega_a_sigma, delta_omega_sigma));
  require(std::isfinite(bound) && std::isfinite(scan_step) && scan_step > 0.0 && bound > scan_step,
          "find_lmax needs scan_bound > scan_step > 0");

  auto f = [&](double l) {
    return closedform::detail::scaled_unit_margin(omega_a_sigma, delta_omega_sigma, l);
  };
  const double a = omega_a_sigma;
  const double d = delta_omega_sigma;
  const double gaussian = std::exp(-(a * a + a * d + 0.5 * d * d));

  double outer = bound;
  double f_outer = f(outer);
  if (f_outer > 0.0) {
    throw BracketingFailure("margin still positive at scan_bound " + format_number(bound) +
                                "; L_max exceeds it",
                            bound);
  }

  // Downward scan; inner is the first grid point with a positive margin.
  double inner = kNaN;
  double f_inner = kNaN;
  for (long k = 1;; ++k) {
    const double l = bound - static_cast<double>(k) * scan_step;
    if (l <= 0.0) break;
    const double fl = f(l);
    if (fl > 0.0) {
      inner = l;
      f_inner = fl;
      break;
    }
    outer = l;
    f_outer = fl;
  }
  if (std::isnan(inner)) {
    throw NoHarvestingRegion("no harvesting for omega_a_sigma=" + format_number(omega_a_sigma) +
                             ", delta_omega_sigma=" + format_number(delta_omega_sigma) +
                             " on (0, " + format_number(bound) + "]");
  }

  // Bisect until the bracket is narrow and the margin is negligible on the
  // scale of its values at the scan bracket.
  const double scale = std::max(std::abs(f_inner), std::abs(f_outer));
  double lo = inner;
  double hi = outer;
  double mid = 0.5 * (lo + hi);
  double f_mid = f(mid);
  int iterations = 0;
  while (iterations < kMaxBisections) {
    const bool narrow = hi - lo <= kRootTolerance * hi;
    if (narrow && std::abs(f_mid) <= 1e-12 * scale) break;
    if (mid <= lo || mid >= hi) break;
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    f_mid = f(mid);
    ++iterations;
  }

  SearchResult out;
  out.location = mid;
  out.value = coupling * coupling * gaussian * f_mid;
  out.bracket = {lo, hi};
  out.iterations = iterations;
  out.converged = hi - lo <= kRootTolerance * hi;
  return out;
}

SearchResult find_optimal_gap(double omega_a_sigma, double l_over_sigma, double coupling,
                              double gap_bound, int scan_points) {
  DetectorPairConfig{omega_a_sigma, 0.0, l_over_sigma, coupling}.validate();
  require(std::isfinite(gap_bound) && gap_bound > 0.0 &&
              gap_bound <= DetectorPairConfig::kMaxDeltaOmegaSigma,
          "find_optimal_gap needs 0 < gap_bound <= 35");
  require(scan_points >= 2, "find_optimal_gap needs scan_points >= 2");

  auto f = [&](double d) { return unit_margin(omega_a_sigma, d, l_over_sigma); };
  auto grid = [&](int k) { return k == scan_points ? gap_bound : gap_bound * k / scan_points; };

  int best = 0;
  double f_best = f(0.0);
  for (int k = 1; k <= scan_points; ++k) {
    const double fk = f(grid(k));
    if (fk > f_best) {
      best = k;
      f_best = fk;
    }
  }

  // Golden-section refinement over the two cells around the best grid point.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = grid(std::max(0, best - 1));
  double hi = grid(std::min(scan_points, best + 1));
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int iterations = 0;
  while (hi - lo > kPeakTolerance && iterations < kMaxBisections) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
    ++iterations;
  }

  SearchResult out;
  out.bracket = {lo, hi};
  out.iterations = iterations;
  out.converged = hi - lo <= kPeakTolerance;
  double location = 0.5 * (lo + hi);
  // The edge itself wins when the refined bracket touches it and the edge value is no lower.
  if (lo <= kPeakTolerance && f(0.0) >= f(location)) {
    location = 0.0;
    out.boundary = true;
    out.note = "maximum at delta_omega_sigma = 0";
  } else if (gap_bound - hi <= kPeakTolerance && f(gap_bound) >= f(location)) {
    location = gap_bound;
    out.boundary = true;
    out.note = "maximum at gap_bound";
  }
  out.location = location;
  out.bracket.first = std::min(out.bracket.first, location);
  out.bracket.second = std::max(out.bracket.second, location);
  out.value = closedform::concurrence({omega_a_sigma, location, l_over_sigma, coupling}).concurrence;
  if (f(location) <= 0.0) {
    if (!out.note.empty()) out.note += "; ";
    out.note += "no harvesting anywhere on [0, gap_bound]";
  }
  return out;
}

SearchResult find_crossover(double omega_a_sigma, double delta_omega_sigma, double coupling,
                            double scan_bound, double scan_step, bool require_both_positive) {
  check_pair(omega_a_sigma, delta_omega_sigma, coupling);
  require(delta_omega_sigma > 0.0, "find_crossover needs delta_omega_sigma > 0");
  require(std::isfinite(scan_bound) && std::isfinite(scan_step) && scan_step > 0.0 &&
              scan_bound > scan_step,
          "find_crossover needs scan_bound > scan_step > 0");

  const double a = omega_a_sigma;
  const double d = delta_omega_sigma;
  auto gap = [&](double l) {
    return require_both_positive ? unit_concurrence(a, d, l) - unit_concurrence(a, 0.0, l)
                                 : unit_margin(a, d, l) - unit_margin(a, 0.0, l);
  };

  double prev = kNaN;
  bool prev_ahead = false;
  bool seen_behind = false;
  double lo = kNaN;
  double hi = kNaN;
  for (long k = 1;; ++k) {
    const double l = static_cast<double>(k) * scan_step;
    if (l > scan_bound * (1.0 + 1e-12)) break;
    const double g = gap(l);
    const bool ahead = g > 0.0;
    if (ahead && !prev_ahead && seen_behind && !std::isnan(prev)) {
      lo = prev;
      hi = l;
      break;
    }
    if (g < 0.0) seen_behind = true;
    prev = l;
    prev_ahead = ahead;
  }
  if (std::isnan(lo)) {
    throw NoCrossover("non-identical pair never overtakes the identical pair for omega_a_sigma=" +
                      format_number(a) + ", delta_omega_sigma=" + format_number(d) + " on (0, " +
                      format_number(scan_bound) + "]");
  }

  // Bisect on "non-identical pair ahead"; lo is behind or level, hi is ahead.
  int iterations = 0;
  while (hi - lo > kRootTolerance * hi && iterations < kMaxBisections) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (gap(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++iterations;
  }

  SearchResult out;
  out.location = 0.5 * (lo + hi);
  out.bracket = {lo, hi};
  out.iterations = iterations;
  out.converged = hi - lo <= kRootTolerance * hi;
  out.value = closedform::concurrence({a, d, out.location, coupling}).concurrence;
  const bool identical_harvests = unit_margin(a, 0.0, out.location) > 0.0;
  const bool nonidentical_harvests = unit_margin(a, d, out.location) > 0.0;
  if (require_both_positive && !identical_harvests) {
    out.note = "identical pair no longer harvests; only the non-identical pair does";
  } else if (!require_both_positive && !(identical_harvests && nonidentical_harvests)) {
    out.note = "margins cross outside the harvesting region";
  }
  return out;
}

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::LOverSigma: return "l_over_sigma";
    case SweepAxis::DeltaOmegaSigma: return "delta_omega_sigma";
    case SweepAxis::OmegaASigma: return "omega_a_sigma";
  }
  return "unknown";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) noexcept {
  if (name == "l_over_sigma" || name == "l") return SweepAxis::LOverSigma;
  if (name == "delta_omega_sigma" || name == "delta-omega") return SweepAxis::DeltaOmegaSigma;
  if (name == "omega_a_sigma" || name == "omega-a") return SweepAxis::OmegaASigma;
  return std::nullopt;
}

SweepGrid sweep(const SweepSpec& spec) {
  const auto& v = spec.values;
  require(!v.empty(), "sweep axis must not be empty");
  for (const double x : v) require(std::isfinite(x), "sweep axis values must be finite");
  if (v.size() > 1) {
    const bool up = v[1] > v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
      require(up ? v[i] > v[i - 1] : v[i] < v[i - 1], "sweep axis must be strictly monotone");
    }
  }

  SweepGrid grid;
  grid.axis_name = std::string(to_string(spec.axis));
  grid.axis_values = v;
  grid.fixed_params = spec.fixed;
  grid.values.resize(v.size());
  grid.errors.resize(v.size());

  parallel_for(v.size(), spec.threads, [&](std::size_t i) {
    DetectorPairConfig cfg = spec.fixed;
    switch (spec.axis) {
      case SweepAxis::LOverSigma: cfg.l_over_sigma = v[i]; break;
      case SweepAxis::DeltaOmegaSigma: cfg.delta_omega_sigma = v[i]; break;
      case SweepAxis::OmegaASigma: cfg.omega_a_sigma = v[i]; break;
    }
    try {
      grid.values[i] = closedform::concurrence(cfg);
    } catch (const std::exception& e) {
      HarvestReport failed;
      failed.p_a = failed.p_b = failed.concurrence = kNaN;
      failed.x = {kNaN, kNaN};
      grid.values[i] = failed;
      grid.errors[i] = e.what();
    }
  });
  return grid;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace harvest::analysis
