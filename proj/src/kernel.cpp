#include "tsineq/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsineq/errors.hpp"

namespace tsineq {

namespace {

// Points at which weight positivity is checked: every right-scattered point
// of the window plus a fixed grid on each continuous run.
constexpr int kGridPerSegment = 256;

double snap_or_throw(const TimeScale& T, double t, const char* what) {
  if (!T.contains(t)) {
    std::ostringstream os;
    os << what << " " << t << " is not a point of the scale";
    raise(ErrorCode::NotInScale, os.str());
  }
  return T.snap(t);
}

void require_in_window(double t, double a, double b, const char* what) {
  double tol = TimeScale::tolerance(std::max(std::abs(a), std::abs(b)));
  if (t < a - tol || t > b + tol) {
    std::ostringstream os;
    os << what << " " << t << " lies outside the window [" << a << ", " << b << "]";
    raise(ErrorCode::OutOfWindow, os.str());
  }
}

}  // namespace

double nu_eval(const WeightPair& weight, const TimeScale& T, double t) {
  double v = delta_derivative(weight.w, T, t);
  if (!(v >= weight.positivity_floor)) {
    std::ostringstream os;
    os << "weight derivative " << v << " at t=" << t << " is below the floor "
       << weight.positivity_floor;
    raise(ErrorCode::NonPositiveWeight, os.str());
  }
  return v;
}

double integral_nu(const WeightPair& weight, const TimeScale& T, double a, double b,
                   const QuadratureConfig& cfg) {
  return delta_integral([&](double s) { return nu_eval(weight, T, s); }, T, a, b, cfg);
}

KernelParams KernelParams::make(const TimeScale& T, double a, double b, double lambda,
                                ParamFunction psi, WeightPair weight) {
  KernelParams kp{snap_or_throw(T, a, "window start"),
                  snap_or_throw(T, b, "window end"),
                  lambda,
                  std::move(psi),
                  std::move(weight),
                  0.0,
                  0.0,
                  0.0,
                  0.0,
                  0};
  if (!(kp.a < kp.b)) {
    raise(ErrorCode::EmptyRange, "window start must precede window end");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    raise(ErrorCode::OutOfRange, "lambda must lie in [0, 1]");
  }

  // Positivity sweep and difference-quotient comparison.
  TimeScale window = T.restrict(kp.a, kp.b);
  for (double t : window.scattered_points(kp.a, kp.b, true, false)) {
    double quotient = nu_eval(kp.weight, T, t);
    double classical = kp.weight.w.derivative(t);
    if (std::abs(quotient - classical) >
        1e-6 * std::max(1.0, std::abs(classical))) {
      ++kp.nu_quotient_mismatches;
    }
  }
  for (const Segment& seg : window.segments()) {
    if (seg.hi - seg.lo <= TimeScale::tolerance(seg.lo)) continue;
    for (int i = 0; i <= kGridPerSegment; ++i) {
      double x = seg.lo + (seg.hi - seg.lo) * (static_cast<double>(i) / kGridPerSegment);
      double v = kp.weight.w.derivative(x);
      if (!(v >= kp.weight.positivity_floor)) {
        std::ostringstream os;
        os << "weight derivative " << v << " at t=" << x << " is below the floor "
           << kp.weight.positivity_floor;
        raise(ErrorCode::NonPositiveWeight, os.str());
      }
    }
  }

  kp.psi_lo = kp.psi(kp.lambda);
  kp.psi_hi = kp.psi(1.0 - kp.lambda);
  double wa = kp.weight.w(kp.a);
  double wb = kp.weight.w(kp.b);
  kp.shift_lo = wa + kp.psi_lo * (wb - wa) / 2.0;
  kp.shift_hi = wa + (1.0 + kp.psi_hi) * (wb - wa) / 2.0;
  return kp;
}

double kernel_eval(const KernelParams& kp, const TimeScale& T, double s, double t) {
  s = snap_or_throw(T, s, "kernel point s");
  t = snap_or_throw(T, t, "kernel point t");
  require_in_window(s, kp.a, kp.b, "kernel point s");
  require_in_window(t, kp.a, kp.b, "kernel point t");
  double shift = (s < t) ? kp.shift_lo : kp.shift_hi;
  return kp.weight.w(s) - shift;
}

namespace {

// First point of the restricted scale where w >= c. The weight is strictly
// increasing on the window, so the crossing is unique; inside a continuous
// run it is pinned down by bisection. Returns the window end when w stays
// below c throughout.
double crossing_point(const TimeScale& window, const DifferentiableFn& w, double c,
                      double b) {
  for (const Segment& seg : window.segments()) {
    if (w(seg.lo) >= c) return seg.lo;
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo) && w(seg.hi) >= c) {
      double lo = seg.lo, hi = seg.hi;
      while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        if (w(mid) >= c) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  return b;
}

}  // namespace

KernelIntegrals::KernelIntegrals(const KernelParams& kp, const TimeScale& T,
                                 const QuadratureConfig& cfg)
    : T_(T.restrict(kp.a, kp.b)),
      cfg_(cfg),
      a_(kp.a),
      b_(kp.b),
      c1_(kp.shift_lo),
      c2_(kp.shift_hi),
      xi1_(crossing_point(T_, kp.weight.w, c1_, b_)),
      xi2_(crossing_point(T_, kp.weight.w, c2_, b_)),
      omega_([w = kp.weight.w](double s) { return w(s); }, T_, a_, b_, cfg) {
  g1_xi1_ = g1(xi1_);
  g2_xi2_ = g2(xi2_);
  g2_b_ = g2(b_);
  double tol = TimeScale::tolerance(std::max(std::abs(a_), std::abs(b_)));
  if (xi1_ > a_ + tol && xi1_ < b_ - tol) kinks_.push_back(xi1_);
  if (xi2_ > a_ + tol && xi2_ < b_ - tol) kinks_.push_back(xi2_);
}

double KernelIntegrals::line(double t) const {
  // With G_i(x) = integral over [a, x] of (w - c_i), the split at the sign
  // change xi_i gives
  //   integral over [a, t) of |w - c1| = G1(t) - 2 G1(min(t, xi1)),
  //   integral over [t, b] of |w - c2| = G2(b) + G2(t) - 2 G2(max(t, xi2)).
  double om_t = omega_.eval(t);
  double g1_t = om_t - c1_ * (t - a_);
  double g2_t = om_t - c2_ * (t - a_);
  double lower = g1_t - 2.0 * (t <= xi1_ ? g1_t : g1_xi1_);
  double upper = g2_b_ + g2_t - 2.0 * (t >= xi2_ ? g2_t : g2_xi2_);
  return lower + upper;
}

double KernelIntegrals::double_integral() const {
  return delta_integral([this](double t) { return line(t); }, T_, a_, b_, cfg_,
                        std::span<const double>(kinks_));
}

double abs_kernel_line_integral(const KernelParams& kp, const TimeScale& T, double t,
                                const QuadratureConfig& cfg) {
  t = snap_or_throw(T, t, "line integral point t");
  require_in_window(t, kp.a, kp.b, "line integral point t");
  KernelIntegrals table(kp, T, cfg);
  return table.line(t);
}

double abs_kernel_double_integral(const KernelParams& kp, const TimeScale& T,
                                  const QuadratureConfig& cfg) {
  KernelIntegrals table(kp, T, cfg);
  return table.double_integral();
}

double h2_bound_terms(const KernelParams& kp, const TimeScale& T, double t,
                      const QuadratureConfig& cfg) {
  // Only meaningful for the identity weight, where K(s, t) is piecewise
  // s - shift and the |K| line integral telescopes into four monomials.
  TimeScale window = T.restrict(kp.a, kp.b);
  auto check_identity = [&](double x) {
    if (std::abs(kp.weight.w(x) - x) > 1e-9 * std::max(1.0, std::abs(x))) {
      raise(ErrorCode::InvalidArgument,
            "monomial bound requires the identity weight");
    }
  };
  for (const Segment& seg : window.segments()) {
    check_identity(seg.lo);
    check_identity(seg.hi);
    if (seg.hi - seg.lo > TimeScale::tolerance(seg.lo)) {
      check_identity(0.5 * (seg.lo + seg.hi));
    }
  }

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
  s1 = T.snap(s1);
  s2 = T.snap(s2);

  t = snap_or_throw(T, t, "evaluation point t");
  double tol = TimeScale::tolerance(std::max(std::abs(kp.a), std::abs(kp.b)));
  if (t < s1 - tol || t > s2 + tol) {
    std::ostringstream os;
    os << "evaluation point " << t << " must lie between the shift points ["
       << s1 << ", " << s2 << "]";
    raise(ErrorCode::OutOfWindow, os.str());
  }

  return monomial_h(T, kp.a, s1, 2, cfg) + monomial_h(T, t, s1, 2, cfg) +
         monomial_h(T, t, s2, 2, cfg) + monomial_h(T, kp.b, s2, 2, cfg);
}

}  // namespace tsineq
