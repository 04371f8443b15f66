#include "tsineq/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tsineq {

double TimeScale::tolerance(double t) {
  return 1e-12 * std::max(1.0, std::fabs(t));
}

TimeScale TimeScale::normalize(std::vector<Segment> segments) {
  if (segments.empty()) raise(ErrorCode::EmptyScale, "a time scale needs at least one segment");
  for (const Segment& s : segments) {
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi))
      raise(ErrorCode::BadSegment, "segment bounds must be finite");
    if (s.lo > s.hi)
      raise(ErrorCode::BadSegment, "segment [" + std::to_string(s.lo) + ", " +
                                       std::to_string(s.hi) + "] has lo > hi");
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<Segment> merged;
  merged.reserve(segments.size());
  for (const Segment& s : segments) {
    if (!merged.empty() && s.lo <= merged.back().hi + tolerance(merged.back().hi)) {
      merged.back().hi = std::max(merged.back().hi, s.hi);
    } else {
      merged.push_back(s);
    }
  }
  return TimeScale(std::move(merged));
}

int TimeScale::locate(double t) const {
  // First segment with hi >= t - tol, then check its lower edge.
  const double tol = tolerance(t);
  auto it = std::lower_bound(segments_.begin(), segments_.end(), t - tol,
                             [](const Segment& s, double v) { return s.hi < v; });
  if (it == segments_.end()) return -1;
  if (t < it->lo - tol) return -1;
  return static_cast<int>(it - segments_.begin());
}

bool TimeScale::contains(double t) const { return locate(t) >= 0; }

double TimeScale::snap(double t) const {
  int i = locate(t);
  if (i < 0) raise(ErrorCode::NotInScale, std::to_string(t) + " is not in the scale");
  const Segment& s = segments_[static_cast<size_t>(i)];
  if (t <= s.lo) return s.lo;
  if (t >= s.hi) return s.hi;
  return t;
}

double TimeScale::sigma(double t) const {
  int i = locate(t);
  if (i < 0) raise(ErrorCode::NotInScale, std::to_string(t) + " is not in the scale");
  const Segment& s = segments_[static_cast<size_t>(i)];
  double p = snap(t);
  if (p < s.hi) return p;  // right-dense inside the segment
  if (static_cast<size_t>(i) + 1 < segments_.size()) return segments_[static_cast<size_t>(i) + 1].lo;
  return s.hi;  // clamp at the maximum
}

double TimeScale::rho(double t) const {
  int i = locate(t);
  if (i < 0) raise(ErrorCode::NotInScale, std::to_string(t) + " is not in the scale");
  const Segment& s = segments_[static_cast<size_t>(i)];
  double p = snap(t);
  if (p > s.lo) return p;  // left-dense inside the segment
  if (i > 0) return segments_[static_cast<size_t>(i) - 1].hi;
  return s.lo;  // clamp at the minimum
}

double TimeScale::graininess(double t) const { return sigma(t) - snap(t); }

PointClass TimeScale::classify(double t) const {
  double p = snap(t);
  PointClass c;
  c.right_scattered = sigma(p) > p;
  c.right_dense = !c.right_scattered;
  c.left_scattered = rho(p) < p;
  c.left_dense = !c.left_scattered;
  return c;
}

Segment TimeScale::segment_at(double t) const {
  int i = locate(t);
  if (i < 0) raise(ErrorCode::NotInScale, std::to_string(t) + " is not in the scale");
  return segments_[static_cast<size_t>(i)];
}

TimeScale TimeScale::restrict(double a, double b) const {
  double pa = snap(a);
  double pb = snap(b);
  if (!(pa < pb)) raise(ErrorCode::EmptyRange, "restriction needs a < b");
  std::vector<Segment> out;
  for (const Segment& s : segments_) {
    double lo = std::max(s.lo, pa);
    double hi = std::min(s.hi, pb);
    if (lo <= hi) out.push_back({lo, hi});
  }
  return TimeScale(std::move(out));
}

bool TimeScale::pure_discrete() const {
  for (const Segment& s : segments_)
    if (s.hi > s.lo) return false;
  return true;
}

std::vector<double> TimeScale::scattered_points(double a, double b, bool include_a,
                                                bool include_b) const {
  double pa = snap(a);
  double pb = snap(b);
  std::vector<double> out;
  for (size_t i = 0; i + 1 < segments_.size(); ++i) {
    double t = segments_[i].hi;  // right-scattered: jumps to the next segment
    if (t < pa || t > pb) continue;
    if (!include_a && t <= pa) continue;
    if (!include_b && t >= pb) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace tsineq
