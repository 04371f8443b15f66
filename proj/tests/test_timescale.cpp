#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tsineq/timescale.hpp"

using namespace tsineq;

namespace {

bool same_segments(const TimeScale& a, const TimeScale& b) {
  const auto& x = a.segments();
  const auto& y = b.segments();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].lo != y[i].lo || x[i].hi != y[i].hi) return false;
  return true;
}

}  // namespace

TEST_CASE("normalize sorts, merges, and validates") {
  TimeScale T = TimeScale::normalize({{3.0, 4.0}, {0.0, 1.0}, {2.0, 2.0}});
  REQUIRE(T.segments().size() == 3);
  CHECK(T.segments()[0].lo == 0.0);
  CHECK(T.segments()[0].hi == 1.0);
  CHECK(T.segments()[1].lo == 2.0);
  CHECK(T.segments()[1].hi == 2.0);
  CHECK(T.min() == 0.0);
  CHECK(T.max() == 4.0);

  SUBCASE("overlapping and touching segments merge") {
    TimeScale M = TimeScale::normalize({{0.0, 1.0}, {0.5, 2.0}, {2.0, 3.0}});
    REQUIRE(M.segments().size() == 1);
    CHECK(M.segments()[0].lo == 0.0);
    CHECK(M.segments()[0].hi == 3.0);
  }

  SUBCASE("isolated point inside a run is absorbed") {
    TimeScale M = TimeScale::normalize({{0.0, 2.0}, {1.0, 1.0}});
    REQUIRE(M.segments().size() == 1);
    CHECK(M.segments()[0].lo == 0.0);
    CHECK(M.segments()[0].hi == 2.0);
  }

  SUBCASE("normalize is idempotent") {
    TimeScale again = TimeScale::normalize(T.segments());
    CHECK(same_segments(T, again));
  }

  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(TimeScale::normalize({}), Error);
    try {
      TimeScale::normalize({});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyScale);
    }
  }

  SUBCASE("inverted segment is rejected") {
    try {
      TimeScale::normalize({{1.0, 0.0}});
      FAIL("expected BadSegment");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadSegment);
    }
  }
}

TEST_CASE("membership, snapping, and tolerance") {
  TimeScale T = TimeScale::normalize({{0.0, 1.0}, {2.0, 2.0}, {3.0, 4.0}});
  CHECK(T.contains(0.0));
  CHECK(T.contains(0.5));
  CHECK(T.contains(2.0));
  CHECK(!T.contains(1.5));
  CHECK(!T.contains(4.5));

  // Within tolerance 1e-12 * max(1, |t|) a query snaps to the point.
  CHECK(T.contains(2.0 + 5e-13));
  CHECK(T.snap(2.0 + 5e-13) == 2.0);
  CHECK(T.snap(0.5) == 0.5);
  CHECK(TimeScale::tolerance(0.0) == 1e-12);
  CHECK(TimeScale::tolerance(100.0) == 1e-10);

  try {
    T.snap(1.5);
    FAIL("expected NotInScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInScale);
  }
}

TEST_CASE("jump operators with clamping at the extrema") {
  TimeScale T = TimeScale::normalize({{0.0, 1.0}, {2.0, 2.0}, {3.0, 4.0}});

  CHECK(T.sigma(0.5) == 0.5);  // interior of a run
  CHECK(T.sigma(1.0) == 2.0);  // run end jumps across the gap
  CHECK(T.sigma(2.0) == 3.0);  // isolated point
  CHECK(T.sigma(4.0) == 4.0);  // clamped at the maximum

  CHECK(T.rho(0.5) == 0.5);
  CHECK(T.rho(3.0) == 2.0);
  CHECK(T.rho(2.0) == 1.0);
  CHECK(T.rho(0.0) == 0.0);  // clamped at the minimum

  CHECK(T.graininess(0.5) == 0.0);
  CHECK(T.graininess(1.0) == 1.0);
  CHECK(T.graininess(2.0) == 1.0);
  CHECK(T.graininess(4.0) == 0.0);
}

TEST_CASE("point classification") {
  TimeScale T = TimeScale::normalize({{0.0, 1.0}, {2.0, 2.0}, {3.0, 4.0}});

  PointClass c = T.classify(0.5);
  CHECK(c.right_dense);
  CHECK(c.left_dense);
  CHECK(!c.right_scattered);
  CHECK(!c.left_scattered);

  c = T.classify(1.0);  // run end before a gap
  CHECK(c.right_scattered);
  CHECK(c.left_dense);

  c = T.classify(2.0);  // isolated interior point
  CHECK(c.right_scattered);
  CHECK(c.left_scattered);

  c = T.classify(3.0);  // run start after a gap
  CHECK(c.right_dense);
  CHECK(c.left_scattered);

  // Clamping convention: the minimum is left-dense, the maximum right-dense,
  // even when isolated.
  TimeScale D = oracle::discrete_scale({0.0, 1.0, 2.0});
  c = D.classify(0.0);
  CHECK(c.left_dense);
  CHECK(c.right_scattered);
  c = D.classify(2.0);
  CHECK(c.right_dense);
  CHECK(c.left_scattered);
}

TEST_CASE("segment lookup and restriction") {
  TimeScale T = TimeScale::normalize({{0.0, 1.0}, {2.0, 2.0}, {3.0, 4.0}});

  Segment s = T.segment_at(0.5);
  CHECK(s.lo == 0.0);
  CHECK(s.hi == 1.0);
  s = T.segment_at(2.0);
  CHECK(s.lo == 2.0);
  CHECK(s.hi == 2.0);

  TimeScale R = T.restrict(0.5, 3.5);
  REQUIRE(R.segments().size() == 3);
  CHECK(R.min() == 0.5);
  CHECK(R.max() == 3.5);
  CHECK(R.segments()[1].lo == 2.0);
  CHECK(R.segments()[1].hi == 2.0);

  SUBCASE("restriction endpoints must lie in the scale") {
    try {
      T.restrict(1.5, 3.5);
      FAIL("expected NotInScale");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInScale);
    }
  }

  SUBCASE("degenerate range is rejected") {
    try {
      T.restrict(2.0, 2.0);
      FAIL("expected EmptyRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyRange);
    }
  }
}

TEST_CASE("scattered point enumeration respects the include flags") {
  TimeScale T = TimeScale::normalize({{0.0, 1.0}, {2.0, 2.0}, {3.0, 4.0}});

  // Right-scattered points of T: 1 and 2 (4 is clamped, hence right-dense).
  auto open_pts = T.scattered_points(0.0, 4.0, false, false);
  REQUIRE(open_pts.size() == 2);
  CHECK(open_pts[0] == 1.0);
  CHECK(open_pts[1] == 2.0);

  auto all = T.scattered_points(1.0, 2.0, true, true);
  REQUIRE(all.size() == 2);

  auto half = T.scattered_points(1.0, 2.0, true, false);
  REQUIRE(half.size() == 1);
  CHECK(half[0] == 1.0);

  TimeScale D = oracle::discrete_scale({0.0, 1.0, 2.0, 3.0});
  auto dpts = D.scattered_points(0.0, 3.0, true, false);
  REQUIRE(dpts.size() == 3);
  CHECK(dpts[2] == 2.0);
}

TEST_CASE("pure_discrete distinguishes point sets from scales with runs") {
  CHECK(oracle::discrete_scale({0.0, 1.0, 3.0, 7.0}).pure_discrete());
  CHECK(!TimeScale::normalize({{0.0, 1.0}}).pure_discrete());
  CHECK(!TimeScale::normalize({{0.0, 1.0}, {2.0, 2.0}}).pure_discrete());
}

TEST_CASE("randomized structural invariants") {
  oracle::Rand rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    // Random raw segments, possibly overlapping.
    int n = rng.integer(1, 6);
    std::vector<Segment> raw;
    for (int i = 0; i < n; ++i) {
      double lo = rng.uniform(-5.0, 5.0);
      double len = rng.uniform() < 0.4 ? 0.0 : rng.uniform(0.0, 2.0);
      raw.push_back({lo, lo + len});
    }
    TimeScale T = TimeScale::normalize(raw);

    // Segments are sorted, disjoint, and non-degenerate as a family.
    const auto& segs = T.segments();
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      CHECK(segs[i].hi < segs[i + 1].lo);
      CHECK(segs[i].lo <= segs[i].hi);
    }
    CHECK(same_segments(T, TimeScale::normalize(T.segments())));

    // Jump operators land in the scale and bracket t.
    for (int probe = 0; probe < 20; ++probe) {
      const Segment& s = segs[static_cast<std::size_t>(rng.integer(
          0, static_cast<int>(segs.size()) - 1))];
      double t = s.lo == s.hi ? s.lo : rng.uniform(s.lo, s.hi);
      t = T.snap(t);
      double fwd = T.sigma(t);
      double back = T.rho(t);
      CHECK(T.contains(fwd));
      CHECK(T.contains(back));
      CHECK(fwd >= t);
      CHECK(back <= t);
      CHECK(T.graininess(t) == fwd - t);
      if (fwd > t) CHECK(T.rho(fwd) == t);  // jumps invert across a gap
      PointClass pc = T.classify(t);
      CHECK((pc.right_dense ^ pc.right_scattered));
      CHECK((pc.left_dense ^ pc.left_scattered));
      CHECK(pc.right_scattered == (fwd > t));
      CHECK(pc.left_scattered == (back < t));
    }
  }
}
