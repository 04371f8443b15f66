#pragma once

#include <vector>

#include "tsineq/calculus.hpp"
#include "tsineq/funcdsl.hpp"
#include "tsineq/timescale.hpp"

namespace tsineq {

/// Strictly increasing weight w together with the floor its delta
/// derivative nu = w-delta must stay above on the verification window.
struct WeightPair {
  DifferentiableFn w;
  double positivity_floor = 1e-12;
};

/// nu(t) = delta derivative of w. Throws NonPositiveWeight when the value
/// drops below the positivity floor.
double nu_eval(const WeightPair& weight, const TimeScale& T, double t);

/// Delta integral of nu over [a, b]; equals w(b) - w(a) up to quadrature.
double integral_nu(const WeightPair& weight, const TimeScale& T, double a, double b,
                   const QuadratureConfig& cfg);

/// Window, parameter, and weight bundle defining the two-branch kernel
///   K(s, t) = w(s) - shift_lo   for s < t,
///             w(s) - shift_hi   for s >= t,
/// with shift_lo = w(a) + psi(lambda) (w(b) - w(a)) / 2 and
/// shift_hi = w(a) + (1 + psi(1 - lambda)) (w(b) - w(a)) / 2.
struct KernelParams {
  double a = 0.0;
  double b = 0.0;
  double lambda = 0.0;
  ParamFunction psi = ParamFunction::identity();
  WeightPair weight;

  // Derived at construction.
  double psi_lo = 0.0;    // psi(lambda)
  double psi_hi = 0.0;    // psi(1 - lambda)
  double shift_lo = 0.0;  // <= shift_hi
  double shift_hi = 0.0;
  // Scattered points where the nu difference quotient strays from the
  // classical derivative of w; informational only.
  int nu_quotient_mismatches = 0;

  /// Validates the window, lambda, and weight positivity over [a, b]
  /// (scattered points plus a 256-point grid per continuous run).
  static KernelParams make(const TimeScale& T, double a, double b, double lambda,
                           ParamFunction psi, WeightPair weight);
};

/// K(s, t); both coordinates must lie in the scale (NotInScale) and inside
/// the window (OutOfWindow).
double kernel_eval(const KernelParams& kp, const TimeScale& T, double s, double t);

/// Integral of |K(., t)| over the window.
double abs_kernel_line_integral(const KernelParams& kp, const TimeScale& T, double t,
                                const QuadratureConfig& cfg);

/// Integral over t of the line integrals: the inner factor of every
/// right-hand side in the verifiers.
double abs_kernel_double_integral(const KernelParams& kp, const TimeScale& T,
                                  const QuadratureConfig& cfg);

/// Identity-weight bound written through second-order monomials:
///   h2(a, s1) + h2(t, s1) + h2(t, s2) + h2(b, s2)
/// with s1 = a + psi(lambda)(b-a)/2 and s2 = a + (1 + psi(1-lambda))(b-a)/2.
/// Requires w to be the identity map, both shift points to lie in the scale
/// (ShiftNotInScale), and s1 <= t <= s2 (OutOfWindow), the range on which
/// the sum equals the |K| line integral.
double h2_bound_terms(const KernelParams& kp, const TimeScale& T, double t,
                      const QuadratureConfig& cfg);

/// One cumulative pass over the weight that turns every |K| line integral
/// into a couple of table lookups. The sign of w(s) - shift is constant on
/// each side of the shift's unique crossing point, so the absolute value
/// integrates exactly through signed partial integrals; crossings inside
/// continuous runs are located by bisection to 1e-13.
class KernelIntegrals {
 public:
  KernelIntegrals(const KernelParams& kp, const TimeScale& T,
                  const QuadratureConfig& cfg);

  double line(double t) const;
  double double_integral() const;

  /// Crossing points of the two shifts: the only kinks of line(t).
  const std::vector<double>& kinks() const { return kinks_; }

 private:
  double g1(double x) const { return omega_.eval(x) - c1_ * (x - a_); }
  double g2(double x) const { return omega_.eval(x) - c2_ * (x - a_); }

  TimeScale T_;
  QuadratureConfig cfg_;
  double a_, b_, c1_, c2_;
  double xi1_, xi2_;  // first in-scale points with w >= shift
  CumulativeIntegral omega_;
  double g1_xi1_ = 0.0, g2_xi2_ = 0.0, g2_b_ = 0.0;
  std::vector<double> kinks_;
};

}  // namespace tsineq
