#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tsineq/funcdsl.hpp"

using namespace tsineq;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("parsing and evaluation of catalog expressions") {
  struct Example {
    const char* text;
    double t;
    double value;
  };
  const Example examples[] = {
      {"t^2 + 1", 3.0, 10.0},
      {"2 * t - 4 / 2", 5.0, 8.0},
      {"-t^2", 2.0, -4.0},          // unary minus binds below ^
      {"(1 + t)^3", 1.0, 8.0},
      {"sin(0 * t)", 7.0, 0.0},
      {"exp(t) * exp(-t)", 0.3, 1.0},
      {"t - t + 1", 123.0, 1.0},
      {"10 - 3 - 2", 0.0, 5.0},     // left association
      {"12 / 2 / 3", 0.0, 2.0},
      {"t + t * t", 3.0, 12.0},     // * above +
      {"1.5e1 + t", 1.0, 16.0},
  };
  for (const auto& ex : examples) {
    CAPTURE(ex.text);
    Expr e = parse(ex.text);
    CHECK(evaluate(e, ex.t) == doctest::Approx(ex.value).epsilon(1e-14));
  }
  CHECK(evaluate(parse("sqrt(t)"), 9.0) == doctest::Approx(3.0));
  CHECK(evaluate(parse("log(t)"), std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(evaluate(parse("cos(t)"), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("parse errors carry a byte offset and the right code") {
  CHECK(code_of([] { parse("t +"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse("(t"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse("t ^ -2"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse("t ^ 2.5"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse(""); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse("t * * t"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse("x + 1"); }) == ErrorCode::UnknownIdentifier);
  CHECK(code_of([] { parse("tan(t)"); }) == ErrorCode::UnknownIdentifier);

  try {
    parse("t + + 1");
  } catch (const Error& e) {
    std::string what = e.what();
    CHECK(what.find("byte") != std::string::npos);
  }
}

TEST_CASE("evaluate reports domain violations") {
  CHECK(code_of([] { evaluate(parse("1 / t"), 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { evaluate(parse("log(t)"), -1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { evaluate(parse("log(t)"), 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { evaluate(parse("sqrt(t)"), -0.5); }) == ErrorCode::DomainError);
  CHECK(evaluate(parse("sqrt(t)"), 0.0) == 0.0);
}

TEST_CASE("print emits minimal parentheses and round-trips") {
  const char* texts[] = {
      "t",
      "t^2 + 1",
      "-t^2",
      "(t + 1) * (t - 1)",
      "sin(3 * t) / (1 + t^2)",
      "exp(t / 4)",
      "t - (1 - t)",
      "2 * t^3 - t / 2 + 7",
      "sqrt(t + 2)",
      "t + t^3 / 10",
  };
  for (const char* text : texts) {
    CAPTURE(text);
    Expr e = parse(text);
    std::string shown = print(e);
    Expr back = parse(shown);
    CHECK(structurally_equal(e, back));
    // And printing is a fixed point after one round trip.
    CHECK(print(back) == shown);
  }
}

TEST_CASE("symbolic differentiation matches finite differences") {
  const char* texts[] = {
      "t^4 - 3 * t^2 + t",
      "sin(2 * t) * cos(t)",
      "exp(t / 3) + log(t + 5)",
      "sqrt(t + 2) * t",
      "(t^2 + 1) / (t + 3)",
      "-sin(t)^3",
  };
  oracle::Rand rng(7);
  for (const char* text : texts) {
    CAPTURE(text);
    DifferentiableFn f = DifferentiableFn::from_text(text);
    for (int i = 0; i < 25; ++i) {
      double t = rng.uniform(-1.5, 1.5);
      double h = 1e-6;
      double fd = (f(t + h) - f(t - h)) / (2.0 * h);
      CHECK(f.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
    }
  }

  SUBCASE("derivatives of simple forms fold to closed expressions") {
    CHECK(evaluate(differentiate(parse("t^3")), 2.0) == 12.0);
    CHECK(evaluate(differentiate(parse("7")), 5.0) == 0.0);
    CHECK(evaluate(differentiate(parse("t")), 5.0) == 1.0);
    CHECK(evaluate(differentiate(parse("5 * t + 1")), 0.0) == 5.0);
  }
}

TEST_CASE("polynomial extraction") {
  auto coef = as_polynomial(parse("2 * t^3 - t + 5"));
  REQUIRE(coef.has_value());
  REQUIRE(coef->size() == 4);
  CHECK((*coef)[0] == 5.0);
  CHECK((*coef)[1] == -1.0);
  CHECK((*coef)[2] == 0.0);
  CHECK((*coef)[3] == 2.0);

  auto prod = as_polynomial(parse("(t + 1) * (t - 1)"));
  REQUIRE(prod.has_value());
  CHECK((*prod)[0] == -1.0);
  CHECK((*prod)[2] == 1.0);

  auto halved = as_polynomial(parse("t^2 / 2"));
  REQUIRE(halved.has_value());
  CHECK((*halved)[2] == 0.5);

  CHECK(!as_polynomial(parse("sin(t)")).has_value());
  CHECK(!as_polynomial(parse("1 / t")).has_value());
  CHECK(!as_polynomial(parse("t^6"), 4).has_value());  // above the cap
}

TEST_CASE("builders fold constants and arithmetic identities") {
  CHECK(structurally_equal(make_add(make_var(), make_const(0.0)), make_var()));
  CHECK(structurally_equal(make_mul(make_const(1.0), make_var()), make_var()));
  CHECK(structurally_equal(make_pow(make_var(), 1), make_var()));
  Expr folded = make_add(make_const(2.0), make_const(3.0));
  CHECK(folded->op == ExprNode::Op::constant);
  CHECK(folded->value == 5.0);
  Expr zero = make_mul(make_const(0.0), make_var());
  CHECK(zero->op == ExprNode::Op::constant);
  CHECK(zero->value == 0.0);
}

TEST_CASE("DifferentiableFn bundles value and derivative") {
  DifferentiableFn f = DifferentiableFn::from_text("t^2 + sin(t)");
  CHECK(f(0.0) == 0.0);
  CHECK(f.derivative(0.0) == doctest::Approx(1.0));
  CHECK(print(f.derivative_expr()).size() > 0);
}

TEST_CASE("parameter function catalog") {
  ParamFunction id = ParamFunction::identity();
  CHECK(id(0.0) == 0.0);
  CHECK(id(0.37) == 0.37);
  CHECK(id(1.0) == 1.0);
  CHECK(id.kind() == ParamFunction::Kind::identity);

  ParamFunction c = ParamFunction::constant(0.25);
  CHECK(c(0.0) == 0.25);
  CHECK(c(1.0) == 0.25);

  ParamFunction p = ParamFunction::power(2.0);
  CHECK(p(0.5) == doctest::Approx(0.25));
  CHECK(p(1.0) == 1.0);
  CHECK(p(0.0) == 0.0);

  ParamFunction tab = ParamFunction::table({{0.0, 0.0}, {0.5, 0.8}, {1.0, 1.0}});
  CHECK(tab(0.25) == doctest::Approx(0.4));
  CHECK(tab(0.75) == doctest::Approx(0.9));
  CHECK(tab(1.0) == 1.0);

  SUBCASE("arguments outside the unit interval are rejected") {
    CHECK(code_of([&] { id(-0.01); }) == ErrorCode::OutOfRange);
    CHECK(code_of([&] { tab(1.01); }) == ErrorCode::OutOfRange);
  }

  SUBCASE("invalid catalog parameters are rejected at construction") {
    CHECK(code_of([] { ParamFunction::constant(1.5); }) ==
          ErrorCode::ValidationError);
    CHECK(code_of([] { ParamFunction::power(0.0); }) == ErrorCode::ValidationError);
    CHECK(code_of([] { ParamFunction::power(-1.0); }) == ErrorCode::ValidationError);
    CHECK(code_of([] { ParamFunction::table({{0.0, 0.0}}); }) ==
          ErrorCode::ValidationError);
    CHECK(code_of([] {
            ParamFunction::table({{0.0, 0.0}, {0.5, 0.2}, {0.9, 1.0}});
          }) == ErrorCode::ValidationError);  // must end at lambda 1
    CHECK(code_of([] {
            ParamFunction::table({{0.0, 0.0}, {0.5, 1.2}, {1.0, 1.0}});
          }) == ErrorCode::ValidationError);  // value escapes [0,1]
    CHECK(code_of([] {
            ParamFunction::table({{0.0, 0.0}, {0.5, 0.3}, {0.5, 0.6}, {1.0, 1.0}});
          }) == ErrorCode::ValidationError);  // knots must strictly increase
  }
}
