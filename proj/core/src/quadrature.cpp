#include "harvest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace harvest::quadrature {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  const int n = order;
  nodes_.resize(n);
  weights_.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    nodes_[i] = -z;
    nodes_[n - 1 - i] = z;
    weights_[i] = weights_[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

std::vector<double> graded_breakpoints(double lo, double hi, std::span<const double> focus,
                                       double finest, double max_width) {
  if (!(hi > lo) || !(max_width > 0.0)) throw std::invalid_argument("bad panel interval");
  std::vector<double> points{lo, hi};
  for (const double c : focus) {
    if (c <= lo || c >= hi) continue;
    points.push_back(c);
    for (double offset = finest; offset < max_width; offset *= 2.0) {
      if (c - offset > lo) points.push_back(c - offset);
      if (c + offset < hi) points.push_back(c + offset);
    }
  }
  std::sort(points.begin(), points.end());
  const double merge = 1e-13 * std::max(1.0, hi - lo);
  points.erase(std::unique(points.begin(), points.end(),
                           [merge](double a, double b) { return b - a < merge; }),
               points.end());
  points.back() = hi;

  std::vector<double> out;
  out.reserve(points.size() * 2);
  out.push_back(points.front());
  for (std::size_t k = 1; k < points.size(); ++k) {
    const double a = points[k - 1];
    const double b = points[k];
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    for (int j = 1; j < pieces; ++j) out.push_back(a + (b - a) * j / pieces);
    out.push_back(b);
  }
  return out;
}

Extrapolation extrapolate_to_zero(std::span<const double> steps,
                                  std::span<const ComplexValue> values, int order) {
  if (steps.size() != values.size() || steps.empty())
    throw std::invalid_argument("extrapolation needs matching, non-empty samples");
  if (order < 0) throw std::invalid_argument("extrapolation order must be >= 0");

  Extrapolation out;
  const std::size_t n = steps.size();
  out.sequence.reserve(n);
  std::vector<ComplexValue> table;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t first = k > static_cast<std::size_t>(order) ? k - order : 0;
    // Neville's scheme evaluated at h = 0 over samples first..k.
    table.assign(values.begin() + first, values.begin() + k + 1);
    for (std::size_t width = 1; width < table.size(); ++width) {
      for (std::size_t i = 0; i + width < table.size(); ++i) {
        const double hi = steps[first + i];
        const double hj = steps[first + i + width];
        table[i] = (hi * table[i + 1] - hj * table[i]) / (hi - hj);
      }
    }
    out.sequence.push_back(table.front());
  }
  out.value = out.sequence.back();
  out.error_estimate = n > 1 ? std::abs(out.sequence[n - 1] - out.sequence[n - 2])
                             : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace harvest::quadrature
