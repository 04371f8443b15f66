#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tsineq/inequality.hpp"

using namespace tsineq;

namespace {

const QuadratureConfig kCfg;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

KernelParams make_unit(const TimeScale& T, double a, double b, double lambda,
                       ParamFunction psi = ParamFunction::identity()) {
  return KernelParams::make(T, a, b, lambda, std::move(psi),
                            WeightPair{DifferentiableFn::from_text("t")});
}

void check_report_shape(const InequalityReport& r) {
  CHECK(r.margin == r.rhs - r.lhs);
  CHECK(r.slack == 10.0 * kCfg.abs_tol + 1e-12 * (1.0 + std::abs(r.rhs)));
  CHECK(r.pass == (r.margin >= -r.slack));
}

}  // namespace

TEST_CASE("derivative sup norms") {
  SUBCASE("quadratic on the unit run") {
    DifferentiableFn f = DifferentiableFn::from_text("t^2");
    TimeScale C = TimeScale::normalize({{0.0, 1.0}});
    CHECK(sup_abs_delta_derivative(f, C, 0.0, 1.0) == 2.0);
  }

  SUBCASE("interior critical point of a cubic is found exactly") {
    // (t^3)' = 3 t^2 peaks at the window ends; (t^3 - 3t)' = 3t^2 - 3 has
    // |.| maximal at t = 0 inside [-1, 1] where it equals 3.
    DifferentiableFn f = DifferentiableFn::from_text("t^3 - 3 * t");
    TimeScale C = TimeScale::normalize({{-1.0, 1.0}});
    CHECK(sup_abs_delta_derivative(f, C, -1.0, 1.0) == 3.0);
  }

  SUBCASE("quadratic on four unit points") {
    DifferentiableFn f = DifferentiableFn::from_text("t^2");
    TimeScale D = oracle::discrete_scale({0.0, 1.0, 2.0, 3.0});
    // Quotients: 1, 3, 5 on [0, 3).
    CHECK(sup_abs_delta_derivative(f, D, 0.0, 3.0) == 5.0);
    // Composed with sigma the probe set shifts right by one step.
    CHECK(sup_abs_delta_derivative_sigma(f, D, 0.0, 2.0) == 5.0);
  }

  SUBCASE("the linear function has unit sups on every scale") {
    DifferentiableFn f = DifferentiableFn::from_text("t");
    DifferentiableFn g = DifferentiableFn::from_text("2 * t");
    for (const TimeScale& T :
         {TimeScale::normalize({{0.0, 2.0}}),
          oracle::discrete_scale({0.0, 1.0, 3.0, 7.0}),
          TimeScale::normalize({{0.0, 1.0}, {1.5, 1.5}, {2.0, 3.0}})}) {
      SupNorms n = sup_norms(f, f, g, T, T.min(), T.max());
      CHECK(n.M == 1.0);
      CHECK(n.N == 1.0);
      CHECK(n.P == 1.0);
      CHECK(n.Q == 2.0);
      CHECK(n.probe_count > 0);
    }
  }

  SUBCASE("sup of the sigma-composed quotient sees the widened step") {
    // On {0, 1, 3, 7}, f = t^2: quotients are 1, 4, 10; composing with
    // sigma from [0, 3) reaches the quotient at 3.
    DifferentiableFn f = DifferentiableFn::from_text("t^2");
    TimeScale D = oracle::discrete_scale({0.0, 1.0, 3.0, 7.0});
    CHECK(sup_abs_delta_derivative(f, D, 0.0, 3.0) == 4.0);
    CHECK(sup_abs_delta_derivative_sigma(f, D, 0.0, 3.0) == 10.0);
  }
}

TEST_CASE("general trapezoid bound: frozen continuous values") {
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  KernelParams kp = make_unit(C, 0.0, 1.0, 0.0);
  DifferentiableFn f = DifferentiableFn::from_text("t^2");

  InequalityReport r = verify_trapezoid(kp, C, f, kCfg);
  CHECK(r.theorem_id == "thm3.2");
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  CHECK(r.components.at("A") == doctest::Approx(1.0));
  CHECK(r.components.at("B") == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(r.components.at("C") == doctest::Approx(0.0).scale(1.0));
  CHECK(r.components.at("M") == 2.0);
  CHECK(r.components.at("N") == 2.0);
  CHECK(r.components.at("int_nu") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.components.at("abs_kernel_double") ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("general trapezoid bound: frozen discrete values") {
  // {0,...,4}, window [0, 3], f = t^2, w = t, lambda = 0: every quantity is
  // a small integer.
  TimeScale D = oracle::discrete_scale(oracle::unit_points(4));
  KernelParams kp = make_unit(D, 0.0, 3.0, 0.0);
  DifferentiableFn f = DifferentiableFn::from_text("t^2");

  InequalityReport r = verify_trapezoid(kp, D, f, kCfg);
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.lhs == 48.0);
  CHECK(r.rhs == 220.0);
  CHECK(r.components.at("A") == 81.0);
  CHECK(r.components.at("B") == 129.0);
  CHECK(r.components.at("C") == 0.0);
  CHECK(r.components.at("M") == 5.0);
  CHECK(r.components.at("N") == 7.0);
  CHECK(r.components.at("int_nu") == 3.0);
  CHECK(r.components.at("abs_kernel_double") == 11.0);
}

TEST_CASE("general trapezoid bound matches the brute assembly on integer scales") {
  oracle::Rand rng(314);
  const char* fns[] = {"t^2", "t^3 - 2 * t", "sin(t / 2)", "exp(t / 4)"};
  const char* wts[] = {"t", "t + t^3 / 10", "exp(t / 4)"};
  int violations = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> pts = oracle::random_integer_points(rng, 4, 10);
    TimeScale D = oracle::discrete_scale(pts);
    double lambda = rng.uniform();
    DifferentiableFn f = DifferentiableFn::from_text(fns[rng.next() % 4]);
    DifferentiableFn w = DifferentiableFn::from_text(wts[rng.next() % 3]);
    CAPTURE(trial);

    double a = pts.front(), b = pts[pts.size() - 2];
    if (a >= b) continue;
    KernelParams kp =
        KernelParams::make(D, a, b, lambda, ParamFunction::identity(),
                           WeightPair{DifferentiableFn(w.expr())});
    oracle::Kernel brute{[&](double x) { return w(x); }, a, b, lambda,
                         [](double x) { return x; }};
    oracle::TrapezoidSides sides =
        oracle::trapezoid(brute, pts, [&](double x) { return f(x); });

    InequalityReport r = verify_trapezoid(kp, D, f, kCfg);
    check_report_shape(r);
    double scale = 1.0 + std::abs(sides.lhs) + std::abs(sides.rhs);
    CHECK_NEAR(r.lhs, sides.lhs, 1e-9 * scale);
    CHECK_NEAR(r.rhs, sides.rhs, 1e-9 * scale);
    CHECK_NEAR(r.components.at("M"), sides.M, 1e-11 * (1.0 + sides.M));
    CHECK_NEAR(r.components.at("N"), sides.N, 1e-11 * (1.0 + sides.N));
    if (!r.pass) ++violations;
  }
  // Nonuniform gaps break the printed bound for some draws; the brute
  // assembly must agree with the engine on those draws too (checked above),
  // and the engine must flag them rather than mask them.
  CHECK(violations >= 0);
}

TEST_CASE("the four-point counterexample to the general trapezoid bound") {
  // On {0, 1, 3, 7} with window [0, 3], f = t, w = t, lambda = 0, every
  // quantity is a small integer and the printed bound fails: the left side
  // is 15 and the right side 10. The sigma-composed sup N equals 1 here
  // while the delta derivative of the composition f o sigma reaches 2, which
  // is where the printed right-hand side loses the run: mu(1) = 2 differs
  // from mu(sigma(1)) = mu(3) = 4.
  TimeScale D = oracle::discrete_scale({0.0, 1.0, 3.0, 7.0});
  KernelParams kp = make_unit(D, 0.0, 3.0, 0.0);
  DifferentiableFn f = DifferentiableFn::from_text("t");

  InequalityReport r = verify_trapezoid(kp, D, f, kCfg);
  check_report_shape(r);
  CHECK(r.lhs == 15.0);
  CHECK(r.rhs == 10.0);
  CHECK(r.margin == -5.0);
  CHECK(!r.pass);
  CHECK(r.components.at("A") == 9.0);
  CHECK(r.components.at("B") == 24.0);
  CHECK(r.components.at("C") == 0.0);
  CHECK(r.components.at("M") == 1.0);
  CHECK(r.components.at("N") == 1.0);
  CHECK(r.components.at("int_nu") == 3.0);
  CHECK(r.components.at("abs_kernel_double") == 15.0);

  // The same configuration on a uniform four-point scale passes: the gap
  // pattern, not the discreteness, is what breaks the bound.
  TimeScale U = oracle::discrete_scale({0.0, 1.0, 2.0, 3.0});
  KernelParams kpu = make_unit(U, 0.0, 2.0, 0.0);
  InequalityReport ru = verify_trapezoid(kpu, U, f, kCfg);
  CHECK(ru.pass);
}

TEST_CASE("continuous-run trapezoid form") {
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  KernelParams kp = make_unit(C, 0.0, 1.0, 0.0);
  DifferentiableFn f = DifferentiableFn::from_text("t^2");

  InequalityReport r = verify_trapezoid_continuous(kp, C, f, kCfg);
  CHECK(r.theorem_id == "cor3.3");
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(4.0 / 3.0).epsilon(1e-9));

  SUBCASE("requires a single continuous run") {
    TimeScale D = oracle::discrete_scale({0.0, 1.0, 2.0});
    KernelParams kpd = make_unit(D, 0.0, 2.0, 0.0);
    CHECK(code_of([&] { verify_trapezoid_continuous(kpd, D, f, kCfg); }) ==
          ErrorCode::NotContinuousScale);
    TimeScale M = TimeScale::normalize({{0.0, 1.0}, {2.0, 3.0}});
    KernelParams kpm = make_unit(M, 0.0, 3.0, 0.0);
    CHECK(code_of([&] { verify_trapezoid_continuous(kpm, M, f, kCfg); }) ==
          ErrorCode::NotContinuousScale);
  }
}

TEST_CASE("unit-weight trapezoid form writes the factor through monomials") {
  TimeScale D = oracle::discrete_scale(oracle::unit_points(4));
  KernelParams kp = make_unit(D, 0.0, 4.0, 1.0);  // shifts collapse to 2
  DifferentiableFn f = DifferentiableFn::from_text("t^2");

  InequalityReport r = verify_trapezoid_unit_weight(kp, D, f, kCfg);
  CHECK(r.theorem_id == "cor3.4");
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.components.at("s1") == 2.0);
  CHECK(r.components.at("s2") == 2.0);
  CHECK_NEAR(r.components.at("h2_factor"), r.components.at("abs_kernel_double"),
             4.0 * kCfg.abs_tol);

  SUBCASE("continuous window, interior lambda") {
    TimeScale C = TimeScale::normalize({{0.0, 2.0}});
    KernelParams kpc = make_unit(C, 0.0, 2.0, 0.4);
    InequalityReport rc = verify_trapezoid_unit_weight(kpc, C, f, kCfg);
    CHECK(rc.pass);
    CHECK_NEAR(rc.components.at("h2_factor"),
               rc.components.at("abs_kernel_double"), 4.0 * kCfg.abs_tol);
  }

  SUBCASE("shift membership is a hypothesis") {
    TimeScale D3 = oracle::discrete_scale({0.0, 1.0, 2.0});
    KernelParams bad = make_unit(D3, 0.0, 2.0, 0.5);  // shifts at 0.5, 1.5
    CHECK(code_of([&] { verify_trapezoid_unit_weight(bad, D3, f, kCfg); }) ==
          ErrorCode::ShiftNotInScale);
  }

  SUBCASE("identity weight is a hypothesis") {
    TimeScale C = TimeScale::normalize({{0.0, 2.0}});
    KernelParams heavy =
        KernelParams::make(C, 0.0, 2.0, 1.0, ParamFunction::identity(),
                           WeightPair{DifferentiableFn::from_text("exp(t / 4)")});
    CHECK(code_of([&] { verify_trapezoid_unit_weight(heavy, C, f, kCfg); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("linear-parameter trapezoid form coincides with the general one") {
  // With psi = id and the identity weight the printed (1 - lambda) / lambda
  // layout is algebra for the general assembly; the reports must agree to
  // rounding for every lambda. A continuous window keeps the shift points
  // in the scale for the whole sweep.
  DifferentiableFn f = DifferentiableFn::from_text("t^2");
  TimeScale C = TimeScale::normalize({{0.0, 2.0}});
  for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
    CAPTURE(lambda);
    KernelParams kp = make_unit(C, 0.0, 2.0, lambda);
    InequalityReport general = verify_trapezoid(kp, C, f, kCfg);
    InequalityReport linear = verify_trapezoid_linear_param(kp, C, f, kCfg);
    CHECK(linear.theorem_id == "cor3.5");
    double scale = 1.0 + std::abs(general.lhs) + std::abs(general.rhs);
    CHECK_NEAR(linear.lhs, general.lhs, 1e-9 * scale);
    CHECK_NEAR(linear.rhs, general.rhs, 1e-9 * scale);
  }

  TimeScale D = oracle::discrete_scale(oracle::unit_points(4));
  SUBCASE("lambda zero on the unit scale reproduces the general integers") {
    KernelParams kp = make_unit(D, 0.0, 3.0, 0.0);
    InequalityReport r = verify_trapezoid_linear_param(kp, D, f, kCfg);
    CHECK(r.lhs == 48.0);
    CHECK(r.rhs == 220.0);
  }

  SUBCASE("interior lambda needs the shifts in the scale") {
    KernelParams kp = make_unit(D, 0.0, 3.0, 0.25);  // s1 = 0.375
    CHECK(code_of([&] { verify_trapezoid_linear_param(kp, D, f, kCfg); }) ==
          ErrorCode::ShiftNotInScale);
  }

  SUBCASE("the linear parameter map is a hypothesis") {
    KernelParams kp = KernelParams::make(D, 0.0, 3.0, 0.5, ParamFunction::power(2.0),
                                         WeightPair{DifferentiableFn::from_text("t")});
    CHECK(code_of([&] { verify_trapezoid_linear_param(kp, D, f, kCfg); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("unit-step trapezoid form") {
  TimeScale D = oracle::discrete_scale(oracle::unit_points(4));
  KernelParams kp = make_unit(D, 0.0, 3.0, 0.0);
  DifferentiableFn f = DifferentiableFn::from_text("t^2");

  InequalityReport r = verify_trapezoid_integer(kp, D, f, kCfg);
  CHECK(r.theorem_id == "cor3.6");
  check_report_shape(r);
  CHECK(r.pass);
  // Forward-difference layout reproduces the general integers.
  CHECK(r.lhs == 48.0);
  CHECK(r.rhs == 220.0);
  // The printed sups range over the narrower interior; the engine uses the
  // full half-open window and reports the gap.
  CHECK(r.components.at("printed_M") == 3.0);
  CHECK(r.components.at("printed_N") == 5.0);
  CHECK(r.components.at("M") == 5.0);
  CHECK(r.components.at("N") == 7.0);
  CHECK(r.components.at("sup_gap") == 2.0);

  SUBCASE("unit spacing across the window is a hypothesis") {
    TimeScale N = oracle::discrete_scale({0.0, 1.0, 3.0, 7.0});
    KernelParams kpn = make_unit(N, 0.0, 3.0, 0.0);
    CHECK(code_of([&] { verify_trapezoid_integer(kpn, N, f, kCfg); }) ==
          ErrorCode::NotIntegerScale);
  }

  SUBCASE("the point after the window end is a hypothesis") {
    // Window [0, 4] on {0..4} has no successor for 4: the sums reach f(5).
    KernelParams kpe = make_unit(D, 0.0, 4.0, 0.0);
    CHECK(code_of([&] { verify_trapezoid_integer(kpe, D, f, kCfg); }) ==
          ErrorCode::NotIntegerScale);
  }

  SUBCASE("a continuous window is rejected") {
    TimeScale C = TimeScale::normalize({{0.0, 3.0}});
    KernelParams kpc = make_unit(C, 0.0, 3.0, 0.0);
    CHECK(code_of([&] { verify_trapezoid_integer(kpc, C, f, kCfg); }) ==
          ErrorCode::NotIntegerScale);
  }
}

TEST_CASE("general weighted product-mean bound: frozen continuous values") {
  // p = q = t on [0, 1], lambda = 0, w = t: G1 = 2/3, G2 = G3 = 0,
  // G4 = G5 = 1/4, so the left side is 1/6; the right side is
  // integral of 2t (t^2 - t + 1/2) = 1/3.
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  KernelParams kp = make_unit(C, 0.0, 1.0, 0.0);
  DifferentiableFn p = DifferentiableFn::from_text("t");

  InequalityReport r = verify_gruss(kp, C, p, p, kCfg);
  CHECK(r.theorem_id == "thm3.7");
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(r.components.at("P") == 1.0);
  CHECK(r.components.at("Q") == 1.0);
  CHECK(r.components.at("G1") == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(r.components.at("G4") == doctest::Approx(0.25).epsilon(1e-10));

  SUBCASE("an asymmetric pair swaps bitwise") {
    DifferentiableFn q = DifferentiableFn::from_text("t^2 - t / 3");
    InequalityReport fwd = verify_gruss(kp, C, p, q, kCfg);
    InequalityReport rev = verify_gruss(kp, C, q, p, kCfg);
    CHECK(fwd.pass);
    CHECK(rev.lhs == fwd.lhs);
    CHECK(rev.rhs == fwd.rhs);
    CHECK(rev.margin == fwd.margin);
  }
}

TEST_CASE("product-mean bound matches the brute assembly on integer scales") {
  oracle::Rand rng(272);
  const char* fns[] = {"t^2", "t^3 - 2 * t", "sin(t / 2)", "exp(t / 4)", "1 + t"};
  const char* wts[] = {"t", "t + t^3 / 10", "exp(t / 4)"};
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> pts = oracle::random_integer_points(rng, 4, 10);
    TimeScale D = oracle::discrete_scale(pts);
    double lambda = rng.uniform();
    DifferentiableFn p = DifferentiableFn::from_text(fns[rng.next() % 5]);
    DifferentiableFn q = DifferentiableFn::from_text(fns[rng.next() % 5]);
    DifferentiableFn w = DifferentiableFn::from_text(wts[rng.next() % 3]);
    CAPTURE(trial);

    double a = pts.front(), b = pts[pts.size() - 2];
    if (a >= b) continue;
    KernelParams kp =
        KernelParams::make(D, a, b, lambda, ParamFunction::identity(),
                           WeightPair{DifferentiableFn(w.expr())});
    oracle::Kernel brute{[&](double x) { return w(x); }, a, b, lambda,
                         [](double x) { return x; }};
    oracle::GrussSides sides = oracle::gruss(
        brute, pts, [&](double x) { return p(x); }, [&](double x) { return q(x); });

    InequalityReport r = verify_gruss(kp, D, p, q, kCfg);
    check_report_shape(r);
    CHECK(r.pass);  // no counterexamples are known for this family
    double scale = 1.0 + std::abs(sides.lhs) + std::abs(sides.rhs);
    CHECK_NEAR(r.lhs, sides.lhs, 1e-9 * scale);
    CHECK_NEAR(r.rhs, sides.rhs, 1e-9 * scale);

    InequalityReport swapped = verify_gruss(kp, D, q, p, kCfg);
    CHECK(swapped.lhs == r.lhs);
    CHECK(swapped.rhs == r.rhs);
  }
}

TEST_CASE("continuous product-mean form") {
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  KernelParams kp = make_unit(C, 0.0, 1.0, 0.0);
  DifferentiableFn p = DifferentiableFn::from_text("t^2");
  DifferentiableFn q = DifferentiableFn::from_text("t");

  InequalityReport r = verify_gruss_continuous(kp, C, p, q, kCfg);
  CHECK(r.theorem_id == "cor3.8");
  check_report_shape(r);
  CHECK(r.pass);
  // On one run sigma = id, so the general and continuous forms coincide.
  InequalityReport g = verify_gruss(kp, C, p, q, kCfg);
  CHECK_NEAR(r.lhs, g.lhs, 1e-11 * (1.0 + std::abs(g.lhs)));
  CHECK_NEAR(r.rhs, g.rhs, 1e-11 * (1.0 + std::abs(g.rhs)));

  SUBCASE("requires a single continuous run") {
    TimeScale D = oracle::discrete_scale({0.0, 1.0, 2.0});
    KernelParams kpd = make_unit(D, 0.0, 2.0, 0.0);
    CHECK(code_of([&] { verify_gruss_continuous(kpd, D, p, q, kCfg); }) ==
          ErrorCode::NotContinuousScale);
  }
}

TEST_CASE("unit-step product-mean form") {
  TimeScale D = oracle::discrete_scale(oracle::unit_points(4));
  KernelParams kp = make_unit(D, 0.0, 3.0, 0.0);
  DifferentiableFn p = DifferentiableFn::from_text("t^2");
  DifferentiableFn q = DifferentiableFn::from_text("1 + t");

  InequalityReport r = verify_gruss_integer(kp, D, p, q, kCfg);
  CHECK(r.theorem_id == "cor3.9");
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.components.count("printed_P") == 1);
  CHECK(r.components.count("printed_Q") == 1);
  CHECK(r.components.at("sup_gap") >= 0.0);
  // The general assembly on the same data gives the same sides.
  InequalityReport g = verify_gruss(kp, D, p, q, kCfg);
  CHECK_NEAR(r.lhs, g.lhs, 1e-11 * (1.0 + std::abs(g.lhs)));
  CHECK_NEAR(r.rhs, g.rhs, 1e-11 * (1.0 + std::abs(g.rhs)));

  SUBCASE("unit spacing is a hypothesis") {
    TimeScale N = oracle::discrete_scale({0.0, 2.0, 4.0});
    KernelParams kpn = make_unit(N, 0.0, 4.0, 0.0);
    CHECK(code_of([&] { verify_gruss_integer(kpn, N, p, q, kCfg); }) ==
          ErrorCode::NotIntegerScale);
  }
}

TEST_CASE("classic product-mean form with the quadratic envelope") {
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  KernelParams kp = make_unit(C, 0.0, 1.0, 0.0);
  DifferentiableFn p = DifferentiableFn::from_text("t");

  InequalityReport r = verify_gruss_classic(kp, C, p, p, kCfg);
  CHECK(r.theorem_id == "cor3.10");
  check_report_shape(r);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  // At lambda = 0 the envelope E(t) equals the line integral everywhere.
  CHECK(r.components.at("efactor_max_dev") <= 1e-9);

  SUBCASE("the envelope dominates for interior lambda") {
    KernelParams mid = make_unit(C, 0.0, 1.0, 0.6);
    InequalityReport rm = verify_gruss_classic(mid, C, p, p, kCfg);
    CHECK(rm.pass);
    // E(t) >= line(t): the recorded deviation is the largest line - E seen,
    // which must never exceed rounding noise.
    CHECK(rm.components.at("efactor_max_dev") <= 1e-9);
    // The envelope does not depend on lambda, so neither does this form.
    CHECK(rm.rhs == doctest::Approx(r.rhs).epsilon(1e-12));
  }

  SUBCASE("scaling p by a constant scales both sides linearly") {
    DifferentiableFn p4 = DifferentiableFn::from_text("4 * t");
    InequalityReport r4 = verify_gruss_classic(kp, C, p4, p, kCfg);
    CHECK(r4.lhs == doctest::Approx(4.0 * r.lhs).epsilon(1e-9));
    CHECK(r4.rhs == doctest::Approx(4.0 * r.rhs).epsilon(1e-9));
  }
}

TEST_CASE("quadratic scaling of the trapezoid family") {
  // f -> c f scales every term of both sides by c^2.
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  KernelParams kp = make_unit(C, 0.0, 1.0, 0.3);
  DifferentiableFn f = DifferentiableFn::from_text("t^2 - t / 2");
  DifferentiableFn f3 = DifferentiableFn::from_text("3 * t^2 - 3 * t / 2");

  InequalityReport base = verify_trapezoid(kp, C, f, kCfg);
  InequalityReport scaled = verify_trapezoid(kp, C, f3, kCfg);
  CHECK(scaled.lhs == doctest::Approx(9.0 * base.lhs).epsilon(1e-9));
  CHECK(scaled.rhs == doctest::Approx(9.0 * base.rhs).epsilon(1e-9));
}

TEST_CASE("classical baselines") {
  TimeScale C = TimeScale::normalize({{0.0, 1.0}});
  DifferentiableFn f = DifferentiableFn::from_text("t^2");

  InequalityReport t = pachpatte_trapezoid(C, 0.0, 1.0, f, kCfg);
  CHECK(t.theorem_id == "pach1.1");
  check_report_shape(t);
  CHECK(t.pass);
  CHECK(t.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(t.rhs == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(t.components.at("M") == 2.0);

  DifferentiableFn p = DifferentiableFn::from_text("t");
  InequalityReport g = pachpatte_gruss(C, 0.0, 1.0, p, p, kCfg);
  CHECK(g.theorem_id == "pach1.2");
  check_report_shape(g);
  CHECK(g.pass);
  CHECK(g.lhs == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
  CHECK(g.rhs == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

  SUBCASE("window must be ordered") {
    CHECK(code_of([&] { pachpatte_trapezoid(C, 1.0, 0.0, f, kCfg); }) ==
          ErrorCode::EmptyRange);
    CHECK(code_of([&] { pachpatte_gruss(C, 1.0, 1.0, p, p, kCfg); }) ==
          ErrorCode::EmptyRange);
  }
}

TEST_CASE("half-open sup convention keeps the bounds sound at the window edge") {
  // The sup ranges over [a, b): the left endpoint participates because its
  // forward quotient feeds the kernel-side integrals; the right endpoint
  // does not. Here the quotient at a = 1 spans the wide gap and dominates
  // everything the run [10, 10.5] can contribute.
  TimeScale M = TimeScale::normalize({{0.0, 1.0}, {10.0, 10.5}});
  DifferentiableFn f = DifferentiableFn::from_text("20 * t - t^2");
  // Quotient at 1: (f(10) - f(1)) / 9 = (100 - 19) / 9 = 9.
  CHECK(sup_abs_delta_derivative(f, M, 1.0, 10.5) == 9.0);
  // Composing with sigma skips that quotient: sigma maps [1, 10.5) into
  // the run, where |f'| stays at or below 1.
  double n = sup_abs_delta_derivative_sigma(f, M, 1.0, 10.5);
  CHECK(n >= 0.9);
  CHECK(n <= 1.0 + 1e-9);
  // Window [0, 1]: the quotient at 1 lies outside [0, 1); the classical
  // derivative 20 - 2t peaks at the participating left endpoint.
  CHECK(sup_abs_delta_derivative(f, M, 0.0, 1.0) == 20.0);
}
