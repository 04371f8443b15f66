#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tsineq/funcdsl.hpp"
#include "tsineq/timescale.hpp"

namespace tsineq {

/// Quadrature settings shared by every integral in the engine. Continuous
/// runs are integrated with a composite 5-point Gauss-Legendre rule,
/// ceil(length * panels_per_unit) panels per run.
struct QuadratureConfig {
  int panels_per_unit = 64;  // >= 16
  std::string rule = "gauss-legendre-5";
  double abs_tol = 1e-9;

  void validate() const;
};

/// Delta derivative: forward difference quotient at right-scattered points,
/// the classical derivative at right-dense ones. Throws DegeneratePoint at
/// an isolated maximum, where neither branch applies.
double delta_derivative(const DifferentiableFn& f, const TimeScale& T, double t);

using Integrand = std::function<double(double)>;

/// Delta integral over [a, b] (both in the scale): classical quadrature on
/// continuous runs plus f(t) * graininess(t) at every right-scattered t in
/// [a, b). Reversed bounds negate; equal bounds give zero. Breakpoints mark
/// integrand kinks or jumps inside continuous runs so no panel straddles one.
/// Scattered sums are always compensated (Neumaier).
double delta_integral(const Integrand& f, const TimeScale& T, double a, double b,
                      const QuadratureConfig& cfg,
                      std::span<const double> breakpoints = {});

/// One forward pass over [a, b] that can then report the partial integral
/// from a to any in-scale x at the cost of a binary search plus at most one
/// partial panel. Shared by the kernel integrals, where many partials of
/// one integrand are needed.
class CumulativeIntegral {
 public:
  CumulativeIntegral(Integrand f, const TimeScale& T, double a, double b,
                     const QuadratureConfig& cfg,
                     std::span<const double> breakpoints = {});

  /// Integral from a to x; x must lie in the scale and in [a, b].
  double eval(double x) const;

  double total() const { return total_; }

 private:
  Integrand f_;
  double a_ = 0.0, b_ = 0.0;
  // Fenceposts: in-scale coordinates (panel edges and isolated points) with
  // the cumulative integral from a up to each. Gap jumps are folded into
  // the next fencepost's value.
  std::vector<double> edge_;
  std::vector<double> cum_at_edge_;
  // dense_[i] is true when [edge_[i], edge_[i+1]] is a quadrature panel.
  std::vector<bool> dense_;
  double total_ = 0.0;
};

/// Generalized monomial: h_0 = 1, h_{k+1}(t, s) = integral of h_k(., s)
/// from s to t. k = 1 collapses to t - s on every scale; higher orders
/// recurse through delta_integral. k > 4 throws DepthExceeded.
double monomial_h(const TimeScale& T, double t, double s, int k,
                  const QuadratureConfig& cfg);

}  // namespace tsineq
