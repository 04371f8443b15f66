#pragma once

#include <vector>

#include "tsineq/errors.hpp"

namespace tsineq {

/// Closed interval of time coordinates. lo == hi is an isolated point.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
};

/// Jump classification of a point. Exactly one of the right flags and one
/// of the left flags is set. The scale minimum is left-dense and the
/// maximum right-dense by the clamping convention sigma(max) = max,
/// rho(min) = min, even when the extremum is an isolated point.
struct PointClass {
  bool right_scattered = false;
  bool right_dense = false;
  bool left_scattered = false;
  bool left_dense = false;
};

/// Finite union of disjoint closed intervals and isolated points, kept
/// sorted and merged. Immutable after construction; all queries are pure.
class TimeScale {
 public:
  /// Sorts, merges touching or overlapping segments, and validates.
  /// Throws EmptyScale for an empty list and BadSegment when lo > hi.
  static TimeScale normalize(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  double min() const { return segments_.front().lo; }
  double max() const { return segments_.back().hi; }

  /// Membership slack used by every point query: 1e-12 * max(1, |t|).
  static double tolerance(double t);

  bool contains(double t) const;

  /// Canonical in-scale coordinate for t (snaps within tolerance).
  /// Throws NotInScale when t is not in the scale.
  double snap(double t) const;

  /// Forward jump, clamped at the maximum.
  double sigma(double t) const;

  /// Backward jump, clamped at the minimum.
  double rho(double t) const;

  /// Graininess mu(t) = sigma(t) - t; zero at right-dense points.
  double graininess(double t) const;

  PointClass classify(double t) const;

  /// Segment containing t. Throws NotInScale.
  Segment segment_at(double t) const;

  /// Sub-scale {t in T : a <= t <= b}. Requires a, b in the scale and
  /// a < b (EmptyRange otherwise).
  TimeScale restrict(double a, double b) const;

  /// True when every segment is an isolated point.
  bool pure_discrete() const;

  /// Right-scattered points t with a <= t <= b (open bounds when the
  /// include flags are false), in increasing order.
  std::vector<double> scattered_points(double a, double b, bool include_a,
                                       bool include_b) const;

 private:
  explicit TimeScale(std::vector<Segment> segs) : segments_(std::move(segs)) {}

  /// Index of the segment containing t within tolerance, or -1.
  int locate(double t) const;

  std::vector<Segment> segments_;
};

}  // namespace tsineq
