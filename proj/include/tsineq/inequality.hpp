#pragma once

#include <map>
#include <string>

#include "tsineq/calculus.hpp"
#include "tsineq/funcdsl.hpp"
#include "tsineq/kernel.hpp"
#include "tsineq/timescale.hpp"

namespace tsineq {

/// Outcome of one inequality check. margin = rhs - lhs; the check passes
/// when margin >= -slack, where slack covers quadrature and rounding error
/// only -- a genuine violation shows up as a clearly negative margin.
struct InequalityReport {
  std::string theorem_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::map<std::string, double> components;
};

/// The four derivative bounds the right-hand sides are built from, plus the
/// number of points probed to obtain them.
struct SupNorms {
  double M = 0.0;  // sup |f-delta|
  double N = 0.0;  // sup |f-delta o sigma|
  double P = 0.0;  // sup |p-delta|
  double Q = 0.0;  // sup |q-delta|
  int probe_count = 0;
};

SupNorms sup_norms(const DifferentiableFn& f, const DifferentiableFn& p,
                   const DifferentiableFn& q, const TimeScale& T, double a, double b);

/// Sup of |f-delta| over [a, b): every right-scattered point in [a, b) plus
/// a dense grid per continuous run (with exact critical points when f is a
/// low-degree polynomial). The left endpoint participates, the right one
/// does not; scattered quotients at a feed the kernel-side integrals, so a
/// sup that skipped them would not bound the right-hand sides.
double sup_abs_delta_derivative(const DifferentiableFn& f, const TimeScale& T,
                                double a, double b);

/// Sup over t in [a, b) of |f-delta(sigma(t))|. Probes where the derivative
/// does not exist (sigma(t) an isolated maximum) are skipped.
double sup_abs_delta_derivative_sigma(const DifferentiableFn& f, const TimeScale& T,
                                      double a, double b);

// --- Trapezoid family -----------------------------------------------------

/// General weighted trapezoid bound on an arbitrary scale:
///   |A - B + C| <= M (N + M) / integral(nu) * double integral of |K|,
/// A = (1 + psi_hi - psi_lo)/2 (f^2(b) - f^2(a)),
/// B = (f(b) - f(a)) / integral(nu) * integral nu (f o sigma + f o sigma^2),
/// C = [psi_lo (f(a) + f(sigma a)) + (1 - psi_hi)(f(b) + f(sigma b))]/2
///       * (f(b) - f(a)).
InequalityReport verify_trapezoid(const KernelParams& kp, const TimeScale& T,
                                  const DifferentiableFn& f,
                                  const QuadratureConfig& cfg);

/// Specialization to a window that is one continuous run (sigma = id):
/// quarter coefficient on the f^2 difference and an M^2 factor.
/// Throws NotContinuousScale otherwise.
InequalityReport verify_trapezoid_continuous(const KernelParams& kp, const TimeScale& T,
                                             const DifferentiableFn& f,
                                             const QuadratureConfig& cfg);

/// Specialization to the identity weight: the |K| double integral becomes a
/// sum of four second-order monomials around the shift points
/// s1 = a + psi_lo (b-a)/2 and s2 = a + (1 + psi_hi)(b-a)/2, both of which
/// must lie in the scale (ShiftNotInScale). The monomial form is valid for
/// t in [s1, s2]; outside that range the factor falls back to the |K| line
/// integral, which it equals on the inside.
InequalityReport verify_trapezoid_unit_weight(const KernelParams& kp,
                                              const TimeScale& T,
                                              const DifferentiableFn& f,
                                              const QuadratureConfig& cfg);

/// Identity weight and the linear parameter map psi(x) = x, written with
/// the (1 - lambda) / lambda coefficients.
InequalityReport verify_trapezoid_linear_param(const KernelParams& kp,
                                               const TimeScale& T,
                                               const DifferentiableFn& f,
                                               const QuadratureConfig& cfg);

/// Unit-step scale form, written through forward differences. Requires unit
/// spacing across [a, b] and one extra point b+1 in the scale (the sums
/// reach f(b+1)); throws NotIntegerScale otherwise. The sups actually used
/// cover [a, b) so the bound stays valid; the narrower printed ranges
/// (a < t < b-1) are reported alongside with their gap.
InequalityReport verify_trapezoid_integer(const KernelParams& kp, const TimeScale& T,
                                          const DifferentiableFn& f,
                                          const QuadratureConfig& cfg);

// --- Gruss family ----------------------------------------------------------

/// General weighted Gruss bound on an arbitrary scale:
///   |G1 + G2 + G3 - G4 - G5|
///     <= integral (P |q(t)| + Q |p(t)|) * line(t),
/// G1 = (1 + psi_hi - psi_lo) integral(nu) integral(p q),
/// G2 = [psi_lo p(a) + (1 - psi_hi) p(b)]/2 integral(nu) integral(q),
/// G3 = [psi_lo q(a) + (1 - psi_hi) q(b)]/2 integral(nu) integral(p),
/// G4 = integral(q) integral(nu p o sigma),
/// G5 = integral(p) integral(nu q o sigma).
InequalityReport verify_gruss(const KernelParams& kp, const TimeScale& T,
                              const DifferentiableFn& p, const DifferentiableFn& q,
                              const QuadratureConfig& cfg);

/// One continuous run (sigma = id). Throws NotContinuousScale otherwise.
InequalityReport verify_gruss_continuous(const KernelParams& kp, const TimeScale& T,
                                         const DifferentiableFn& p,
                                         const DifferentiableFn& q,
                                         const QuadratureConfig& cfg);

/// Unit-step scale form. Requires unit spacing across [a, b]; throws
/// NotIntegerScale otherwise. Same printed-range reporting as the trapezoid
/// unit-step form.
InequalityReport verify_gruss_integer(const KernelParams& kp, const TimeScale& T,
                                      const DifferentiableFn& p,
                                      const DifferentiableFn& q,
                                      const QuadratureConfig& cfg);

/// Linear parameter map, identity weight, one continuous run. The kernel
/// factor is replaced by E(t) = t^2 - t(a+b) + (a^2+b^2)/2, which dominates
/// the |K| line integral for every lambda; the largest observed difference
/// line(t) - E(t) is reported as component "efactor_max_dev".
InequalityReport verify_gruss_classic(const KernelParams& kp, const TimeScale& T,
                                      const DifferentiableFn& p,
                                      const DifferentiableFn& q,
                                      const QuadratureConfig& cfg);

// --- Classical baselines ----------------------------------------------------

/// |1/2 (f^2(b) - f^2(a)) - (f(b) - f(a))/(b-a) integral(f)|
///   <= (b-a)^2 sup|f'|^2 / 3      on one continuous run.
InequalityReport pachpatte_trapezoid(const TimeScale& T, double a, double b,
                                     const DifferentiableFn& f,
                                     const QuadratureConfig& cfg);

/// |integral(p q)/(b-a) - integral(p) integral(q)/(b-a)^2|
///   <= 1/(2(b-a)^2) integral (P|q| + Q|p|) E      on one continuous run.
InequalityReport pachpatte_gruss(const TimeScale& T, double a, double b,
                                 const DifferentiableFn& p, const DifferentiableFn& q,
                                 const QuadratureConfig& cfg);

}  // namespace tsineq
