#pragma once

#include <vector>

#include "tsineq/calculus.hpp"
#include "tsineq/funcdsl.hpp"
#include "tsineq/kernel.hpp"
#include "tsineq/timescale.hpp"

namespace tsineq {

/// Both sides of the weighted mean-value identity at a fixed point t:
///   lhs  = [ (1 + psi_hi - psi_lo)/2 f(t)
///            + (psi_lo f(a) + (1 - psi_hi) f(b))/2 ] integral(nu)
///   rhs  = integral K(s, t) f-delta(s) + integral nu(s) f(sigma(s))
/// The two sides agree exactly; residual = lhs - rhs measures the
/// evaluator, not the mathematics.
struct IdentityResidual {
  double t = 0.0;
  double lhs = 0.0;
  double rhs_kernel_part = 0.0;
  double rhs_sigma_part = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool discrete = false;  // evaluated on a purely scattered window
  bool pass = false;
};

double montgomery_lhs(const KernelParams& kp, const TimeScale& T,
                      const DifferentiableFn& f, double t, const QuadratureConfig& cfg);

/// Kernel part and sigma part of the right-hand side.
std::pair<double, double> montgomery_rhs(const KernelParams& kp, const TimeScale& T,
                                         const DifferentiableFn& f, double t,
                                         const QuadratureConfig& cfg);

/// Evaluates both sides at t. On purely scattered windows every integral is
/// a finite sum; those sums cancel algebraically, so they are accumulated in
/// double-double arithmetic and held to a 1e-12 relative gate. Windows with
/// continuous runs go through quadrature and are held to 10x its tolerance.
IdentityResidual montgomery_residual(const KernelParams& kp, const TimeScale& T,
                                     const DifferentiableFn& f, double t,
                                     const QuadratureConfig& cfg);

/// Points at which a window's identity is probed: every scattered point plus
/// sixteen interior samples per continuous run.
std::vector<double> identity_probes(const TimeScale& T, double a, double b);

}  // namespace tsineq
