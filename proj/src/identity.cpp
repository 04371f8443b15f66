#include "tsineq/identity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tsineq/detail/dd.hpp"
#include "tsineq/errors.hpp"

namespace tsineq {

namespace {

double lhs_bracket(const KernelParams& kp, const DifferentiableFn& f, double t) {
  double fa = f(kp.a);
  double fb = f(kp.b);
  return 0.5 * (1.0 + kp.psi_hi - kp.psi_lo) * f(t) +
         0.5 * (kp.psi_lo * fa + (1.0 - kp.psi_hi) * fb);
}

}  // namespace

double montgomery_lhs(const KernelParams& kp, const TimeScale& T,
                      const DifferentiableFn& f, double t, const QuadratureConfig& cfg) {
  return lhs_bracket(kp, f, t) * integral_nu(kp.weight, T, kp.a, kp.b, cfg);
}

std::pair<double, double> montgomery_rhs(const KernelParams& kp, const TimeScale& T,
                                         const DifferentiableFn& f, double t,
                                         const QuadratureConfig& cfg) {
  std::array<double, 1> bp = {t};
  double kernel_part = delta_integral(
      [&](double s) { return kernel_eval(kp, T, s, t) * delta_derivative(f, T, s); },
      T, kp.a, kp.b, cfg, std::span<const double>(bp));
  double sigma_part = delta_integral(
      [&](double s) { return nu_eval(kp.weight, T, s) * f(T.sigma(s)); }, T, kp.a,
      kp.b, cfg);
  return {kernel_part, sigma_part};
}

namespace {

// On a purely scattered window every integral is a finite sum over the
// points a = t_0 < ... < t_n = b with steps t_{i+1} - t_i. Written through
// the increments df_i = f_{i+1} - f_i and dw_i = w_{i+1} - w_i, the
// difference quotients cancel the steps exactly, so the three sums are free
// of divisions and cancel algebraically. Double-double accumulation keeps
// the numerical residual near the square of machine epsilon.
IdentityResidual scattered_residual(const KernelParams& kp,
                                    const TimeScale& window,
                                    const DifferentiableFn& f, double t) {
  std::vector<double> pts;
  for (const Segment& seg : window.segments()) pts.push_back(seg.lo);
  const std::size_t n = pts.size() - 1;  // pts.back() == b

  detail::dd kernel_sum{};
  detail::dd sigma_sum{};
  detail::dd nu_total{};
  for (std::size_t i = 0; i < n; ++i) {
    double wi = kp.weight.w(pts[i]);
    double wn = kp.weight.w(pts[i + 1]);
    if (!(wn - wi > 0.0)) {
      raise(ErrorCode::NonPositiveWeight, "weight must increase across every step");
    }
    double fi = f(pts[i]);
    double fn = f(pts[i + 1]);
    double shift = (pts[i] < t) ? kp.shift_lo : kp.shift_hi;
    // K(t_i, t) * df_i
    kernel_sum = detail::add(
        kernel_sum, detail::add(detail::two_prod(wi, fn - fi),
                                detail::two_prod(-shift, fn - fi)));
    // dw_i * f(sigma(t_i))
    sigma_sum = detail::add(sigma_sum, detail::mul(detail::sub(wn, wi), fn));
    nu_total = detail::add(nu_total, detail::sub(wn, wi));
  }

  detail::dd lhs = detail::mul(nu_total, lhs_bracket(kp, f, t));
  detail::dd rhs = detail::add(kernel_sum, sigma_sum);
  IdentityResidual out;
  out.t = t;
  out.lhs = detail::to_double(lhs);
  out.rhs_kernel_part = detail::to_double(kernel_sum);
  out.rhs_sigma_part = detail::to_double(sigma_sum);
  out.residual = detail::to_double(detail::sub(lhs, rhs));
  out.discrete = true;
  return out;
}

}  // namespace

IdentityResidual montgomery_residual(const KernelParams& kp, const TimeScale& T,
                                     const DifferentiableFn& f, double t,
                                     const QuadratureConfig& cfg) {
  double tol_win = TimeScale::tolerance(std::max(std::abs(kp.a), std::abs(kp.b)));
  double ts = T.snap(t);
  if (ts < kp.a - tol_win || ts > kp.b + tol_win) {
    raise(ErrorCode::OutOfWindow, "identity point t must lie inside the window");
  }
  TimeScale window = T.restrict(kp.a, kp.b);
  IdentityResidual out;
  if (window.pure_discrete()) {
    out = scattered_residual(kp, window, f, ts);
    out.tolerance = 1e-12 * (1.0 + std::abs(out.lhs));
  } else {
    out.t = ts;
    out.lhs = montgomery_lhs(kp, T, f, ts, cfg);
    auto [kpart, spart] = montgomery_rhs(kp, T, f, ts, cfg);
    out.rhs_kernel_part = kpart;
    out.rhs_sigma_part = spart;
    out.residual = out.lhs - (kpart + spart);
    out.discrete = false;
    out.tolerance = 10.0 * cfg.abs_tol;
  }
  out.pass = std::abs(out.residual) <= out.tolerance;
  return out;
}

std::vector<double> identity_probes(const TimeScale& T, double a, double b) {
  TimeScale window = T.restrict(a, b);
  std::vector<double> probes;
  for (const Segment& seg : window.segments()) {
    probes.push_back(seg.lo);
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo)) {
      for (int i = 1; i <= 16; ++i) {
        probes.push_back(seg.lo + (seg.hi - seg.lo) * (i / 17.0));
      }
      probes.push_back(seg.hi);
    }
  }
  if (probes.empty() || std::abs(probes.back() - window.max()) >
                            TimeScale::tolerance(window.max())) {
    probes.push_back(window.max());
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end(),
                           [](double x, double y) {
                             return std::abs(x - y) <= TimeScale::tolerance(x);
                           }),
               probes.end());
  return probes;
}

}  // namespace tsineq
