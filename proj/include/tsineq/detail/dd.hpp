#pragma once

#include <cmath>

namespace tsineq::detail {

/// Double-double value: hi + lo with |lo| <= ulp(hi)/2. Enough precision
/// that algebraically telescoping sums over scale points cancel to well
/// below the 1e-12 identity gate even when the parts are large.
struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd renorm(double hi, double lo) {
  double s = hi + lo;
  return {s, lo - (s - hi)};
}

inline dd add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  return renorm(s.hi, s.lo + a.lo + b.lo);
}

inline dd add(dd a, double b) { return add(a, dd{b, 0.0}); }

inline dd sub(dd a, dd b) { return add(a, dd{-b.hi, -b.lo}); }

inline dd sub(double a, double b) { return two_sum(a, -b); }

inline dd mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  return renorm(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd mul(dd a, double b) { return mul(a, dd{b, 0.0}); }

inline double to_double(dd a) { return a.hi + a.lo; }

}  // namespace tsineq::detail
