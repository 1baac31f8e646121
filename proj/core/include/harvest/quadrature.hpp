#pragma once

#include <span>
#include <vector>

#include "harvest/specfun.hpp"

namespace harvest::quadrature {

// n-point Gauss-Legendre rule on [-1, 1], nodes from Newton iteration on P_n.
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  // Integral of f over [a, b]; f may return double or ComplexValue.
  template <class F>
  auto integrate(F&& f, double a, double b) const -> decltype(f(a)) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    decltype(f(a)) sum{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
  }

  // Sum of integrate() over consecutive breakpoint pairs.
  template <class F>
  auto integrate_panels(F&& f, std::span<const double> breakpoints) const -> decltype(f(0.0)) {
    decltype(f(0.0)) sum{};
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
      sum += integrate(f, breakpoints[k], breakpoints[k + 1]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Sorted panel boundaries covering [lo, hi]. Every focus point inside the
// interval becomes a boundary, with further boundaries at focus +- finest * 2^k
// until the offsets reach max_width; remaining gaps are split evenly so that no
// panel is wider than max_width.
std::vector<double> graded_breakpoints(double lo, double hi, std::span<const double> focus,
                                       double finest, double max_width);

struct Extrapolation {
  ComplexValue value{};
  // sequence[k] extrapolates through samples max(0, k - order) .. k.
  std::vector<ComplexValue> sequence;
  // |sequence[n-1] - sequence[n-2]|, infinite for a single sample.
  double error_estimate = 0.0;
};

// Polynomial (Neville) extrapolation of samples v(h_k) to h = 0 using at most
// order + 1 consecutive samples. Steps must be distinct.
Extrapolation extrapolate_to_zero(std::span<const double> steps,
                                  std::span<const ComplexValue> values, int order);

}  // namespace harvest::quadrature
