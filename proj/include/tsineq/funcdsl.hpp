#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsineq/errors.hpp"

namespace tsineq {

enum class FuncKind { sin, cos, exp, log, sqrt };

struct ExprNode;

/// Immutable expression tree over one variable t. Shared subtrees are fine.
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Op { var, constant, neg, add, sub, mul, div, pow, call };

  Op op;
  double value = 0.0;             // constant
  int exponent = 0;               // pow (non-negative)
  FuncKind func = FuncKind::sin;  // call
  Expr lhs;                       // operand (sole child for neg/pow/call)
  Expr rhs;                       // right operand of binary ops
};

// Builders. Binary builders fold constants and drop arithmetic identities
// (x+0, 1*x, x^0, ...); no further simplification is attempted.
Expr make_var();
Expr make_const(double v);
Expr make_neg(Expr e);
Expr make_add(Expr a, Expr b);
Expr make_sub(Expr a, Expr b);
Expr make_mul(Expr a, Expr b);
Expr make_div(Expr a, Expr b);
Expr make_pow(Expr base, int exponent);
Expr make_call(FuncKind f, Expr arg);

/// Parses "t^2 + sin(3*t)" style text. Precedence: ^ above unary minus
/// above mul/div above add/sub; binary operators associate left.
/// Exponents must be non-negative integer literals.
/// Throws SyntaxError/UnknownIdentifier with a byte offset in the message.
Expr parse(const std::string& text);

/// Minimal-parenthesis rendering; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Symbolic derivative with constant folding.
Expr differentiate(const Expr& e);

/// Throws DomainError for log/sqrt outside their domain and division by zero.
double evaluate(const Expr& e, double t);

/// Dense polynomial coefficients (index = power) when e is a polynomial of
/// degree <= max_degree with constant denominators only; nullopt otherwise.
std::optional<std::vector<double>> as_polynomial(const Expr& e, int max_degree = 8);

/// Expression bundled with its symbolic derivative, the form every
/// calculus routine consumes.
class DifferentiableFn {
 public:
  explicit DifferentiableFn(Expr expr)
      : expr_(std::move(expr)), derivative_(differentiate(expr_)) {}

  static DifferentiableFn from_text(const std::string& text) {
    return DifferentiableFn(parse(text));
  }

  double operator()(double t) const { return evaluate(expr_, t); }
  double derivative(double t) const { return evaluate(derivative_, t); }

  const Expr& expr() const { return expr_; }
  const Expr& derivative_expr() const { return derivative_; }

 private:
  Expr expr_;
  Expr derivative_;
};

/// Parameter map of [0,1] into itself, restricted to a validated catalog.
class ParamFunction {
 public:
  enum class Kind { identity, constant, power, table };

  static ParamFunction identity();
  static ParamFunction constant(double c);        // c in [0,1]
  static ParamFunction power(double p);           // p > 0
  /// Knots must start at 0, end at 1, be strictly increasing in lambda,
  /// and keep values in [0,1]; evaluation interpolates linearly.
  static ParamFunction table(std::vector<std::pair<double, double>> knots);

  /// psi(lambda); throws OutOfRange outside [0,1].
  double operator()(double lambda) const;

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }  // constant c or power p
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  ParamFunction(Kind k, double param, std::vector<std::pair<double, double>> knots)
      : kind_(k), param_(param), knots_(std::move(knots)) {}

  Kind kind_;
  double param_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace tsineq
