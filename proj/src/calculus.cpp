#include "tsineq/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace tsineq {

namespace {

// 5-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665,
                                 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};

double gl5(const Integrand& f, double lo, double hi) {
  double mid = 0.5 * (lo + hi);
  double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += kGlWeight[i] * f(mid + half * kGlNode[i]);
  return sum * half;
}

/// Running compensated sum (Neumaier).
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

/// Decomposes T intersect [a, b] (a < b, both snapped) into quadrature
/// panels on continuous runs and scattered gap terms, in increasing order.
/// on_panel(lo, hi) is invoked per panel, on_gap(t, mu) per right-scattered
/// point t in [a, b).
template <typename PanelFn, typename GapFn>
void walk_window(const TimeScale& T, double a, double b, const QuadratureConfig& cfg,
                 std::span<const double> breakpoints, PanelFn&& on_panel,
                 GapFn&& on_gap) {
  TimeScale R = T.restrict(a, b);
  std::vector<double> bps(breakpoints.begin(), breakpoints.end());
  std::sort(bps.begin(), bps.end());
  const auto& segs = R.segments();
  for (size_t i = 0; i < segs.size(); ++i) {
    double u = segs[i].lo;
    double v = segs[i].hi;
    if (v > u) {
      std::vector<double> cuts{u};
      double tol = TimeScale::tolerance(v);
      for (double x : bps)
        if (x > u + tol && x < v - tol) cuts.push_back(x);
      cuts.push_back(v);
      for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        double lo = cuts[c];
        double hi = cuts[c + 1];
        int n = std::max(1, static_cast<int>(std::ceil((hi - lo) * cfg.panels_per_unit)));
        double h = (hi - lo) / n;
        for (int j = 0; j < n; ++j)
          on_panel(lo + j * h, j + 1 == n ? hi : lo + (j + 1) * h);
      }
    }
    if (i + 1 < segs.size()) on_gap(v, segs[i + 1].lo - v);
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (panels_per_unit < 16)
    raise(ErrorCode::InvalidArgument, "panels_per_unit must be at least 16");
  if (rule != "gauss-legendre-5")
    raise(ErrorCode::InvalidArgument, "unknown quadrature rule '" + rule + "'");
  if (!(abs_tol > 0.0))
    raise(ErrorCode::InvalidArgument, "abs_tol must be positive");
}

double delta_derivative(const DifferentiableFn& f, const TimeScale& T, double t) {
  double p = T.snap(t);
  double sig = T.sigma(p);
  if (sig > p) return (f(sig) - f(p)) / (sig - p);
  Segment seg = T.segment_at(p);
  if (seg.hi > seg.lo) return f.derivative(p);
  raise(ErrorCode::DegeneratePoint,
        "delta derivative undefined at the isolated point " + std::to_string(p));
}

double delta_integral(const Integrand& f, const TimeScale& T, double a, double b,
                      const QuadratureConfig& cfg,
                      std::span<const double> breakpoints) {
  double pa = T.snap(a);
  double pb = T.snap(b);
  if (pa == pb) return 0.0;
  double sign = 1.0;
  if (pa > pb) {
    std::swap(pa, pb);
    sign = -1.0;
  }
  CompensatedSum acc;
  walk_window(
      T, pa, pb, cfg, breakpoints,
      [&](double lo, double hi) { acc.add(gl5(f, lo, hi)); },
      [&](double t, double mu) { acc.add(f(t) * mu); });
  return sign * acc.value();
}

CumulativeIntegral::CumulativeIntegral(Integrand f, const TimeScale& T, double a,
                                       double b, const QuadratureConfig& cfg,
                                       std::span<const double> breakpoints)
    : f_(std::move(f)), a_(T.snap(a)), b_(T.snap(b)) {
  if (!(a_ < b_)) raise(ErrorCode::EmptyRange, "cumulative integral needs a < b");
  CompensatedSum acc;
  edge_.push_back(a_);
  cum_at_edge_.push_back(0.0);
  walk_window(
      T, a_, b_, cfg, breakpoints,
      [&](double lo, double hi) {
        (void)lo;
        acc.add(gl5(f_, lo, hi));
        edge_.push_back(hi);
        cum_at_edge_.push_back(acc.value());
        dense_.push_back(true);
      },
      [&](double t, double mu) {
        acc.add(f_(t) * mu);
        edge_.push_back(t + mu);
        cum_at_edge_.push_back(acc.value());
        dense_.push_back(false);
      });
  total_ = acc.value();
}

double CumulativeIntegral::eval(double x) const {
  double tol = TimeScale::tolerance(x);
  if (x < a_ - tol || x > b_ + tol)
    raise(ErrorCode::OutOfWindow, "cumulative integral evaluated outside its window");
  auto it = std::upper_bound(edge_.begin(), edge_.end(), x);
  size_t i = static_cast<size_t>(it - edge_.begin());
  // Snap to the nearest fencepost when within tolerance.
  if (i < edge_.size() && edge_[i] - x <= tol) return cum_at_edge_[i];
  if (i == 0) return 0.0;
  if (x - edge_[i - 1] <= tol) return cum_at_edge_[i - 1];
  if (i >= edge_.size() || !dense_[i - 1])
    raise(ErrorCode::NotInScale, "cumulative integral evaluated inside a gap");
  return cum_at_edge_[i - 1] + gl5(f_, edge_[i - 1], x);
}

double monomial_h(const TimeScale& T, double t, double s, int k,
                  const QuadratureConfig& cfg) {
  if (k < 0) raise(ErrorCode::InvalidArgument, "monomial order must be non-negative");
  if (k > 4) raise(ErrorCode::DepthExceeded, "monomial order capped at 4");
  double pt = T.snap(t);
  double ps = T.snap(s);
  if (k == 0) return 1.0;
  if (k == 1) return pt - ps;  // integral of 1 telescopes on every scale
  return delta_integral(
      [&](double tau) { return monomial_h(T, tau, ps, k - 1, cfg); }, T, ps, pt, cfg);
}

}  // namespace tsineq
