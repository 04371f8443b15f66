#include "tsineq/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "tsineq/errors.hpp"

namespace tsineq {

namespace {

constexpr int kDenseGrid = 1024;  // sup-norm samples per continuous run
constexpr int kRootScan = 512;    // sign-change scan per continuous run

double window_tolerance(double a, double b) {
  return TimeScale::tolerance(std::max(std::abs(a), std::abs(b)));
}

void finalize(InequalityReport& r, const QuadratureConfig& cfg) {
  r.margin = r.rhs - r.lhs;
  r.slack = 10.0 * cfg.abs_tol + 1e-12 * (1.0 + std::abs(r.rhs));
  r.pass = r.margin >= -r.slack;
}

Segment continuous_window(const TimeScale& T, double a, double b) {
  TimeScale window = T.restrict(a, b);
  const auto& segs = window.segments();
  if (segs.size() != 1 || segs.front().hi - segs.front().lo <=
                              TimeScale::tolerance(segs.front().lo)) {
    raise(ErrorCode::NotContinuousScale,
          "window must be a single continuous run of the scale");
  }
  return segs.front();
}

// Unit spacing between consecutive isolated points across [lo, hi].
void require_unit_steps(const TimeScale& T, double lo, double hi) {
  TimeScale window = T.restrict(lo, hi);
  if (!window.pure_discrete()) {
    raise(ErrorCode::NotIntegerScale,
          "window must consist of isolated points only");
  }
  const auto& segs = window.segments();
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    if (std::abs(segs[i + 1].lo - segs[i].lo - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "points must be unit-spaced; step " << segs[i].lo << " -> "
         << segs[i + 1].lo;
      raise(ErrorCode::NotIntegerScale, os.str());
    }
  }
}

void require_identity_weight(const KernelParams& kp, const TimeScale& T) {
  TimeScale window = T.restrict(kp.a, kp.b);
  auto check = [&](double x) {
    if (std::abs(kp.weight.w(x) - x) > 1e-9 * std::max(1.0, std::abs(x))) {
      raise(ErrorCode::InvalidArgument, "this form requires the identity weight");
    }
  };
  for (const Segment& seg : window.segments()) {
    check(seg.lo);
    check(seg.hi);
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo)) {
      check(0.5 * (seg.lo + seg.hi));
    }
  }
}

void require_linear_param(const KernelParams& kp) {
  if (kp.psi.kind() != ParamFunction::Kind::identity) {
    raise(ErrorCode::InvalidArgument, "this form requires the linear parameter map");
  }
}

// Real roots of the second derivative when f is a polynomial of degree <= 4
// (the derivative's extrema); empty otherwise. Keeps only roots in [lo, hi].
void append_poly_critical_points(const DifferentiableFn& f, double lo, double hi,
                                 std::vector<double>& out) {
  auto coeffs = as_polynomial(f.expr(), 8);
  if (!coeffs || coeffs->size() > 5) return;
  std::vector<double> d2;  // second-derivative coefficients
  for (std::size_t i = 2; i < coeffs->size(); ++i) {
    d2.push_back((*coeffs)[i] * static_cast<double>(i) * static_cast<double>(i - 1));
  }
  while (!d2.empty() && d2.back() == 0.0) d2.pop_back();
  auto keep = [&](double x) {
    if (x >= lo && x <= hi) out.push_back(x);
  };
  if (d2.size() == 2) {  // linear: d2[0] + d2[1] x
    keep(-d2[0] / d2[1]);
  } else if (d2.size() == 3) {  // quadratic
    double c = d2[0], b1 = d2[1], a2 = d2[2];
    double disc = b1 * b1 - 4.0 * a2 * c;
    if (disc >= 0.0) {
      double root = std::sqrt(disc);
      double q = -0.5 * (b1 + std::copysign(root, b1 == 0.0 ? 1.0 : b1));
      keep(q / a2);
      if (q != 0.0) keep(c / q);
    }
  }
}

double dense_sup_abs_derivative(const DifferentiableFn& f, double lo, double hi) {
  double best = 0.0;
  for (int i = 0; i <= kDenseGrid; ++i) {
    double x = lo + (hi - lo) * (static_cast<double>(i) / kDenseGrid);
    best = std::max(best, std::abs(f.derivative(x)));
  }
  std::vector<double> crit;
  append_poly_critical_points(f, lo, hi, crit);
  for (double x : crit) best = std::max(best, std::abs(f.derivative(x)));
  return best;
}

// Zeros of g inside (lo, hi), used as quadrature breakpoints under |g|.
void append_sign_change_roots(const DifferentiableFn& g, double lo, double hi,
                              std::vector<double>& out) {
  double prev_x = lo;
  double prev_v = g(prev_x);
  for (int i = 1; i <= kRootScan; ++i) {
    double x = lo + (hi - lo) * (static_cast<double>(i) / kRootScan);
    double v = g(x);
    if (prev_v == 0.0) {
      out.push_back(prev_x);
    } else if (prev_v * v < 0.0) {
      double rlo = prev_x, rhi = x, vlo = prev_v;
      while (rhi - rlo > 1e-13) {
        double mid = 0.5 * (rlo + rhi);
        double vm = g(mid);
        if (vm == 0.0) {
          rlo = rhi = mid;
        } else if ((vlo < 0.0) == (vm < 0.0)) {
          rlo = mid;
          vlo = vm;
        } else {
          rhi = mid;
        }
      }
      out.push_back(0.5 * (rlo + rhi));
    }
    prev_x = x;
    prev_v = v;
  }
}

std::vector<double> abs_value_breakpoints(const TimeScale& T, double a, double b,
                                          std::initializer_list<const DifferentiableFn*> fns,
                                          const std::vector<double>& extra) {
  std::vector<double> bps(extra);
  TimeScale window = T.restrict(a, b);
  for (const Segment& seg : window.segments()) {
    if (seg.hi - seg.lo <= TimeScale::tolerance(seg.lo)) continue;
    for (const DifferentiableFn* g : fns) {
      append_sign_change_roots(*g, seg.lo, seg.hi, bps);
    }
  }
  return bps;
}

// Shift points of the identity-weight kernel, snapped; both must belong to
// the scale.
std::pair<double, double> shift_points_in_scale(const KernelParams& kp,
                                                const TimeScale& T) {
  double s1 = kp.a + kp.psi_lo * (kp.b - kp.a) / 2.0;
  double s2 = kp.a + (1.0 + kp.psi_hi) * (kp.b - kp.a) / 2.0;
  if (!T.contains(s1)) {
    std::ostringstream os;
    os << "lower shift point " << s1 << " is not a point of the scale";
    raise(ErrorCode::ShiftNotInScale, os.str());
  }
  if (!T.contains(s2)) {
    std::ostringstream os;
    os << "upper shift point " << s2 << " is not a point of the scale";
    raise(ErrorCode::ShiftNotInScale, os.str());
  }
  return {T.snap(s1), T.snap(s2)};
}

struct UnitWeightFactor {
  double s1, s2;
  double h2_a_s1, h2_b_s2;
  double factor;           // integral over t of the bracket
  double double_integral;  // |K| double integral, which the factor equals
};

// Integral over t in [a, b] of the four-monomial bracket
//   h2(a, s1) + h2(t, s1) + h2(t, s2) + h2(b, s2),
// the identity-weight |K| line integral for t in [s1, s2]; outside that
// range the bracket is replaced by the line integral itself.
UnitWeightFactor unit_weight_factor(const KernelParams& kp, const TimeScale& T,
                                    const QuadratureConfig& cfg) {
  auto [s1, s2] = shift_points_in_scale(kp, T);
  CumulativeIntegral cum1([s1](double tau) { return tau - s1; }, T, kp.a, kp.b, cfg);
  CumulativeIntegral cum2([s2](double tau) { return tau - s2; }, T, kp.a, kp.b, cfg);
  double c1_s1 = cum1.eval(s1);
  double c2_s2 = cum2.eval(s2);
  UnitWeightFactor out;
  out.s1 = s1;
  out.s2 = s2;
  out.h2_a_s1 = -c1_s1;
  out.h2_b_s2 = cum2.total() - c2_s2;
  KernelIntegrals table(kp, T, cfg);
  double tol = window_tolerance(kp.a, kp.b);
  auto bracket = [&](double t) {
    if (t >= s1 - tol && t <= s2 + tol) {
      return (cum1.eval(t) - c1_s1) + (cum2.eval(t) - c2_s2) + out.h2_a_s1 +
             out.h2_b_s2;
    }
    return table.line(t);
  };
  std::vector<double> bps = {s1, s2};
  out.factor = delta_integral(bracket, T, kp.a, kp.b, cfg,
                              std::span<const double>(bps));
  out.double_integral = table.double_integral();
  return out;
}

}  // namespace

SupNorms sup_norms(const DifferentiableFn& f, const DifferentiableFn& p,
                   const DifferentiableFn& q, const TimeScale& T, double a, double b) {
  SupNorms s;
  s.M = sup_abs_delta_derivative(f, T, a, b);
  s.N = sup_abs_delta_derivative_sigma(f, T, a, b);
  s.P = sup_abs_delta_derivative(p, T, a, b);
  s.Q = sup_abs_delta_derivative(q, T, a, b);
  a = T.snap(a);
  b = T.snap(b);
  int count = static_cast<int>(T.scattered_points(a, b, true, false).size());
  TimeScale window = T.restrict(a, b);
  for (const Segment& seg : window.segments()) {
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo)) count += kDenseGrid + 1;
  }
  s.probe_count = count;
  return s;
}

double sup_abs_delta_derivative(const DifferentiableFn& f, const TimeScale& T,
                                double a, double b) {
  a = T.snap(a);
  b = T.snap(b);
  double best = 0.0;
  for (double t : T.scattered_points(a, b, true, false)) {
    best = std::max(best, std::abs(delta_derivative(f, T, t)));
  }
  TimeScale window = T.restrict(a, b);
  for (const Segment& seg : window.segments()) {
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo)) {
      best = std::max(best, dense_sup_abs_derivative(f, seg.lo, seg.hi));
    }
  }
  return best;
}

double sup_abs_delta_derivative_sigma(const DifferentiableFn& f, const TimeScale& T,
                                      double a, double b) {
  a = T.snap(a);
  b = T.snap(b);
  double best = 0.0;
  for (double t : T.scattered_points(a, b, true, false)) {
    double x = T.sigma(t);
    try {
      best = std::max(best, std::abs(delta_derivative(f, T, x)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegeneratePoint) throw;
      // sigma(t) is an isolated maximum: no derivative there, skip the probe.
    }
  }
  TimeScale window = T.restrict(a, b);
  for (const Segment& seg : window.segments()) {
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo)) {
      // sigma is the identity inside a run.
      best = std::max(best, dense_sup_abs_derivative(f, seg.lo, seg.hi));
    }
  }
  return best;
}

// --- Trapezoid family -------------------------------------------------------

InequalityReport verify_trapezoid(const KernelParams& kp, const TimeScale& T,
                                  const DifferentiableFn& f,
                                  const QuadratureConfig& cfg) {
  InequalityReport r;
  r.theorem_id = "thm3.2";
  double fa = f(kp.a), fb = f(kp.b);
  double int_nu = integral_nu(kp.weight, T, kp.a, kp.b, cfg);
  double A = 0.5 * (1.0 + kp.psi_hi - kp.psi_lo) * (fb * fb - fa * fa);
  double bint = delta_integral(
      [&](double s) {
        double s1 = T.sigma(s);
        return nu_eval(kp.weight, T, s) * (f(s1) + f(T.sigma(s1)));
      },
      T, kp.a, kp.b, cfg);
  double B = (fb - fa) / int_nu * bint;
  double C = 0.5 *
             (kp.psi_lo * (fa + f(T.sigma(kp.a))) +
              (1.0 - kp.psi_hi) * (fb + f(T.sigma(kp.b)))) *
             (fb - fa);
  r.lhs = std::abs(A - B + C);

  double M = sup_abs_delta_derivative(f, T, kp.a, kp.b);
  double N = sup_abs_delta_derivative_sigma(f, T, kp.a, kp.b);
  KernelIntegrals table(kp, T, cfg);
  double dbl = table.double_integral();
  r.rhs = M * (N + M) / int_nu * dbl;
  r.components = {{"A", A},         {"B", B}, {"C", C},
                  {"M", M},         {"N", N}, {"int_nu", int_nu},
                  {"abs_kernel_double", dbl}};
  finalize(r, cfg);
  return r;
}

InequalityReport verify_trapezoid_continuous(const KernelParams& kp, const TimeScale& T,
                                             const DifferentiableFn& f,
                                             const QuadratureConfig& cfg) {
  continuous_window(T, kp.a, kp.b);
  InequalityReport r;
  r.theorem_id = "cor3.3";
  double fa = f(kp.a), fb = f(kp.b);
  double int_nu = integral_nu(kp.weight, T, kp.a, kp.b, cfg);
  double A = 0.25 * (1.0 + kp.psi_hi - kp.psi_lo) * (fb * fb - fa * fa);
  double bint = delta_integral(
      [&](double s) { return nu_eval(kp.weight, T, s) * f(s); }, T, kp.a, kp.b, cfg);
  double B = (fb - fa) / int_nu * bint;
  double C = 0.5 * (kp.psi_lo * fa + (1.0 - kp.psi_hi) * fb) * (fb - fa);
  r.lhs = std::abs(A - B + C);

  double M = sup_abs_delta_derivative(f, T, kp.a, kp.b);
  KernelIntegrals table(kp, T, cfg);
  double dbl = table.double_integral();
  r.rhs = M * M / int_nu * dbl;
  r.components = {{"A", A}, {"B", B},           {"C", C},
                  {"M", M}, {"int_nu", int_nu}, {"abs_kernel_double", dbl}};
  finalize(r, cfg);
  return r;
}

namespace {

// Shared body of the two identity-weight trapezoid forms; only the printed
// coefficient layout of the left side differs.
InequalityReport trapezoid_unit_weight_impl(const KernelParams& kp, const TimeScale& T,
                                            const DifferentiableFn& f,
                                            const QuadratureConfig& cfg,
                                            bool linear_param_layout) {
  require_identity_weight(kp, T);
  InequalityReport r;
  r.theorem_id = linear_param_layout ? "cor3.5" : "cor3.4";
  double fa = f(kp.a), fb = f(kp.b);
  double span = kp.b - kp.a;
  double bint = delta_integral(
      [&](double s) {
        double s1 = T.sigma(s);
        return f(s1) + f(T.sigma(s1));
      },
      T, kp.a, kp.b, cfg);
  double B = (fb - fa) / span * bint;
  double A, C;
  if (linear_param_layout) {
    A = (1.0 - kp.lambda) * (fb * fb - fa * fa);
    C = 0.5 * kp.lambda * (fa + fb + f(T.sigma(kp.a)) + f(T.sigma(kp.b))) *
        (fb - fa);
  } else {
    A = 0.5 * (1.0 + kp.psi_hi - kp.psi_lo) * (fb * fb - fa * fa);
    C = 0.5 *
        (kp.psi_lo * (fa + f(T.sigma(kp.a))) +
         (1.0 - kp.psi_hi) * (fb + f(T.sigma(kp.b)))) *
        (fb - fa);
  }
  r.lhs = std::abs(A - B + C);

  double M = sup_abs_delta_derivative(f, T, kp.a, kp.b);
  double N = sup_abs_delta_derivative_sigma(f, T, kp.a, kp.b);
  UnitWeightFactor uw = unit_weight_factor(kp, T, cfg);
  r.rhs = M * (N + M) / span * uw.factor;
  r.components = {{"A", A},
                  {"B", B},
                  {"C", C},
                  {"M", M},
                  {"N", N},
                  {"int_nu", span},
                  {"s1", uw.s1},
                  {"s2", uw.s2},
                  {"h2_a_s1", uw.h2_a_s1},
                  {"h2_b_s2", uw.h2_b_s2},
                  {"h2_factor", uw.factor},
                  {"abs_kernel_double", uw.double_integral}};
  finalize(r, cfg);
  return r;
}

}  // namespace

InequalityReport verify_trapezoid_unit_weight(const KernelParams& kp,
                                              const TimeScale& T,
                                              const DifferentiableFn& f,
                                              const QuadratureConfig& cfg) {
  return trapezoid_unit_weight_impl(kp, T, f, cfg, false);
}

InequalityReport verify_trapezoid_linear_param(const KernelParams& kp,
                                               const TimeScale& T,
                                               const DifferentiableFn& f,
                                               const QuadratureConfig& cfg) {
  require_linear_param(kp);
  return trapezoid_unit_weight_impl(kp, T, f, cfg, true);
}

InequalityReport verify_trapezoid_integer(const KernelParams& kp, const TimeScale& T,
                                          const DifferentiableFn& f,
                                          const QuadratureConfig& cfg) {
  double sb = T.sigma(kp.b);
  if (std::abs(sb - (kp.b + 1.0)) > 1e-9) {
    raise(ErrorCode::NotIntegerScale,
          "scale must contain b+1 as the successor of the window end");
  }
  require_unit_steps(T, kp.a, sb);

  InequalityReport r;
  r.theorem_id = "cor3.6";
  double fa = f(kp.a), fb = f(kp.b);
  double int_nu = integral_nu(kp.weight, T, kp.a, kp.b, cfg);
  double A = 0.5 * (1.0 + kp.psi_hi - kp.psi_lo) * (fb * fb - fa * fa);
  double bint = delta_integral(
      [&](double s) {
        double s1 = T.sigma(s);
        return nu_eval(kp.weight, T, s) * (f(s1) + f(T.sigma(s1)));
      },
      T, kp.a, kp.b, cfg);
  double B = (fb - fa) / int_nu * bint;
  double C = 0.5 *
             (kp.psi_lo * (fa + f(kp.a + 1.0)) +
              (1.0 - kp.psi_hi) * (fb + f(kp.b + 1.0))) *
             (fb - fa);
  r.lhs = std::abs(A - B + C);

  double M = sup_abs_delta_derivative(f, T, kp.a, kp.b);
  double N = sup_abs_delta_derivative_sigma(f, T, kp.a, kp.b);
  // Sups over the narrower printed range a < t < b-1, for comparison.
  double printed_m = 0.0, printed_n = 0.0;
  for (double t : T.scattered_points(kp.a, kp.b - 1.0, false, false)) {
    printed_m = std::max(printed_m, std::abs(delta_derivative(f, T, t)));
    printed_n = std::max(printed_n, std::abs(delta_derivative(f, T, T.sigma(t))));
  }
  KernelIntegrals table(kp, T, cfg);
  double dbl = table.double_integral();
  r.rhs = M * (N + M) / int_nu * dbl;
  r.components = {{"A", A},
                  {"B", B},
                  {"C", C},
                  {"M", M},
                  {"N", N},
                  {"printed_M", printed_m},
                  {"printed_N", printed_n},
                  {"sup_gap", std::max({0.0, M - printed_m, N - printed_n})},
                  {"int_nu", int_nu},
                  {"abs_kernel_double", dbl}};
  finalize(r, cfg);
  return r;
}

// --- Gruss family ------------------------------------------------------------

namespace {

struct GrussCore {
  double int_nu, ip, iq, ipq;
};

GrussCore gruss_core(const KernelParams& kp, const TimeScale& T,
                     const DifferentiableFn& p, const DifferentiableFn& q,
                     const QuadratureConfig& cfg) {
  GrussCore c;
  c.int_nu = integral_nu(kp.weight, T, kp.a, kp.b, cfg);
  c.ip = delta_integral([&](double t) { return p(t); }, T, kp.a, kp.b, cfg);
  c.iq = delta_integral([&](double t) { return q(t); }, T, kp.a, kp.b, cfg);
  c.ipq = delta_integral([&](double t) { return p(t) * q(t); }, T, kp.a, kp.b, cfg);
  return c;
}

double gruss_rhs_with_line(const KernelParams& kp, const TimeScale& T,
                           const DifferentiableFn& p, const DifferentiableFn& q,
                           double P, double Q, const QuadratureConfig& cfg) {
  KernelIntegrals table(kp, T, cfg);
  std::vector<double> bps =
      abs_value_breakpoints(T, kp.a, kp.b, {&p, &q}, table.kinks());
  return delta_integral(
      [&](double t) { return (P * std::abs(q(t)) + Q * std::abs(p(t))) * table.line(t); },
      T, kp.a, kp.b, cfg, std::span<const double>(bps));
}

InequalityReport gruss_general(const KernelParams& kp, const TimeScale& T,
                               const DifferentiableFn& p, const DifferentiableFn& q,
                               const QuadratureConfig& cfg, bool sigma_is_identity,
                               const char* theorem_id) {
  InequalityReport r;
  r.theorem_id = theorem_id;
  GrussCore c = gruss_core(kp, T, p, q, cfg);
  auto weighted_sigma_integral = [&](const DifferentiableFn& g) {
    return delta_integral(
        [&](double s) {
          return nu_eval(kp.weight, T, s) * (sigma_is_identity ? g(s) : g(T.sigma(s)));
        },
        T, kp.a, kp.b, cfg);
  };
  double ips = weighted_sigma_integral(p);
  double iqs = weighted_sigma_integral(q);
  double g1 = (1.0 + kp.psi_hi - kp.psi_lo) * c.int_nu * c.ipq;
  double g2 = 0.5 * (kp.psi_lo * p(kp.a) + (1.0 - kp.psi_hi) * p(kp.b)) * c.int_nu * c.iq;
  double g3 = 0.5 * (kp.psi_lo * q(kp.a) + (1.0 - kp.psi_hi) * q(kp.b)) * c.int_nu * c.ip;
  double g4 = c.iq * ips;
  double g5 = c.ip * iqs;
  // Grouped so the value is bitwise symmetric under swapping p and q.
  r.lhs = std::abs(g1 + (g2 + g3) - (g4 + g5));

  double P = sup_abs_delta_derivative(p, T, kp.a, kp.b);
  double Q = sup_abs_delta_derivative(q, T, kp.a, kp.b);
  r.rhs = gruss_rhs_with_line(kp, T, p, q, P, Q, cfg);
  r.components = {{"G1", g1}, {"G2", g2}, {"G3", g3},
                  {"G4", g4}, {"G5", g5}, {"P", P},
                  {"Q", Q},   {"int_nu", c.int_nu}};
  finalize(r, cfg);
  return r;
}

}  // namespace

InequalityReport verify_gruss(const KernelParams& kp, const TimeScale& T,
                              const DifferentiableFn& p, const DifferentiableFn& q,
                              const QuadratureConfig& cfg) {
  return gruss_general(kp, T, p, q, cfg, false, "thm3.7");
}

InequalityReport verify_gruss_continuous(const KernelParams& kp, const TimeScale& T,
                                         const DifferentiableFn& p,
                                         const DifferentiableFn& q,
                                         const QuadratureConfig& cfg) {
  continuous_window(T, kp.a, kp.b);
  return gruss_general(kp, T, p, q, cfg, true, "cor3.8");
}

InequalityReport verify_gruss_integer(const KernelParams& kp, const TimeScale& T,
                                      const DifferentiableFn& p,
                                      const DifferentiableFn& q,
                                      const QuadratureConfig& cfg) {
  require_unit_steps(T, kp.a, kp.b);
  InequalityReport r = gruss_general(kp, T, p, q, cfg, false, "cor3.9");
  // Sups over the narrower printed range a < t < b-1, for comparison.
  double printed_p = 0.0, printed_q = 0.0;
  for (double t : T.scattered_points(kp.a, kp.b - 1.0, false, false)) {
    printed_p = std::max(printed_p, std::abs(delta_derivative(p, T, t)));
    printed_q = std::max(printed_q, std::abs(delta_derivative(q, T, t)));
  }
  double P = r.components.at("P");
  double Q = r.components.at("Q");
  r.components["printed_P"] = printed_p;
  r.components["printed_Q"] = printed_q;
  r.components["sup_gap"] = std::max({0.0, P - printed_p, Q - printed_q});
  return r;
}

InequalityReport verify_gruss_classic(const KernelParams& kp, const TimeScale& T,
                                      const DifferentiableFn& p,
                                      const DifferentiableFn& q,
                                      const QuadratureConfig& cfg) {
  require_linear_param(kp);
  require_identity_weight(kp, T);
  continuous_window(T, kp.a, kp.b);
  InequalityReport r;
  r.theorem_id = "cor3.10";
  double a = kp.a, b = kp.b, lam = kp.lambda;
  GrussCore c = gruss_core(kp, T, p, q, cfg);
  double term_pq = 2.0 * (1.0 - lam) * (b - a) * c.ipq;
  double term_q = 0.5 * lam * (b - a) * (p(a) + p(b)) * c.iq;
  double term_p = 0.5 * lam * (b - a) * (q(a) + q(b)) * c.ip;
  // Grouped so the value is bitwise symmetric under swapping p and q.
  r.lhs = std::abs(term_pq + (term_q + term_p) - 2.0 * c.iq * c.ip);

  double P = sup_abs_delta_derivative(p, T, a, b);
  double Q = sup_abs_delta_derivative(q, T, a, b);
  auto efactor = [a, b](double t) {
    return t * t - t * (a + b) + 0.5 * (a * a + b * b);
  };
  std::vector<double> bps = abs_value_breakpoints(T, a, b, {&p, &q}, {});
  r.rhs = delta_integral(
      [&](double t) { return (P * std::abs(q(t)) + Q * std::abs(p(t))) * efactor(t); },
      T, a, b, cfg, std::span<const double>(bps));

  // Witness that the quadratic factor dominates the |K| line integral for
  // this lambda: the largest observed difference should never be positive.
  KernelIntegrals table(kp, T, cfg);
  double max_dev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    double t = a + (b - a) * (i / 256.0);
    max_dev = std::max(max_dev, table.line(t) - efactor(t));
  }
  r.components = {{"P", P},
                  {"Q", Q},
                  {"int_p", c.ip},
                  {"int_q", c.iq},
                  {"int_pq", c.ipq},
                  {"efactor_max_dev", max_dev}};
  finalize(r, cfg);
  return r;
}

// --- Classical baselines ------------------------------------------------------

InequalityReport pachpatte_trapezoid(const TimeScale& T, double a, double b,
                                     const DifferentiableFn& f,
                                     const QuadratureConfig& cfg) {
  a = T.snap(a);
  b = T.snap(b);
  if (!(a < b)) raise(ErrorCode::EmptyRange, "window start must precede window end");
  continuous_window(T, a, b);
  InequalityReport r;
  r.theorem_id = "pach1.1";
  double fa = f(a), fb = f(b);
  double int_f = delta_integral([&](double x) { return f(x); }, T, a, b, cfg);
  r.lhs = std::abs(0.5 * (fb * fb - fa * fa) - (fb - fa) / (b - a) * int_f);
  double M = sup_abs_delta_derivative(f, T, a, b);
  r.rhs = (b - a) * (b - a) * M * M / 3.0;
  r.components = {{"M", M}, {"int_f", int_f}};
  finalize(r, cfg);
  return r;
}

InequalityReport pachpatte_gruss(const TimeScale& T, double a, double b,
                                 const DifferentiableFn& p, const DifferentiableFn& q,
                                 const QuadratureConfig& cfg) {
  a = T.snap(a);
  b = T.snap(b);
  if (!(a < b)) raise(ErrorCode::EmptyRange, "window start must precede window end");
  continuous_window(T, a, b);
  InequalityReport r;
  r.theorem_id = "pach1.2";
  double span = b - a;
  double ip = delta_integral([&](double x) { return p(x); }, T, a, b, cfg);
  double iq = delta_integral([&](double x) { return q(x); }, T, a, b, cfg);
  double ipq = delta_integral([&](double x) { return p(x) * q(x); }, T, a, b, cfg);
  r.lhs = std::abs(ipq / span - ip * iq / (span * span));
  double P = sup_abs_delta_derivative(p, T, a, b);
  double Q = sup_abs_delta_derivative(q, T, a, b);
  auto efactor = [a, b](double x) {
    double mid = 0.5 * (a + b);
    return 0.25 * (b - a) * (b - a) + (x - mid) * (x - mid);
  };
  std::vector<double> bps = abs_value_breakpoints(T, a, b, {&p, &q}, {});
  double weighted = delta_integral(
      [&](double x) { return (P * std::abs(q(x)) + Q * std::abs(p(x))) * efactor(x); },
      T, a, b, cfg, std::span<const double>(bps));
  r.rhs = weighted / (2.0 * span * span);
  r.components = {{"P", P}, {"Q", Q}, {"int_p", ip}, {"int_q", iq}, {"int_pq", ipq}};
  finalize(r, cfg);
  return r;
}

}  // namespace tsineq
