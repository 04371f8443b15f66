#include "tsineq/funcdsl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace tsineq {

namespace {

using Op = ExprNode::Op;

Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_const(const Expr& e, double v) {
  return e->op == Op::constant && e->value == v;
}

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::sin: return "sin";
    case FuncKind::cos: return "cos";
    case FuncKind::exp: return "exp";
    case FuncKind::log: return "log";
    case FuncKind::sqrt: return "sqrt";
  }
  return "?";
}

}  // namespace

Expr make_var() {
  static const Expr v = node({.op = Op::var});
  return v;
}

Expr make_const(double v) { return node({.op = Op::constant, .value = v}); }

Expr make_neg(Expr e) {
  if (e->op == Op::constant) return make_const(-e->value);
  if (e->op == Op::neg) return e->lhs;
  return node({.op = Op::neg, .lhs = std::move(e)});
}

Expr make_add(Expr a, Expr b) {
  if (a->op == Op::constant && b->op == Op::constant) return make_const(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return node({.op = Op::add, .lhs = std::move(a), .rhs = std::move(b)});
}

Expr make_sub(Expr a, Expr b) {
  if (a->op == Op::constant && b->op == Op::constant) return make_const(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return make_neg(std::move(b));
  return node({.op = Op::sub, .lhs = std::move(a), .rhs = std::move(b)});
}

Expr make_mul(Expr a, Expr b) {
  if (a->op == Op::constant && b->op == Op::constant) return make_const(a->value * b->value);
  if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  // Constants lead, so derivative trees print in a predictable shape.
  if (b->op == Op::constant && a->op != Op::constant) std::swap(a, b);
  return node({.op = Op::mul, .lhs = std::move(a), .rhs = std::move(b)});
}

Expr make_div(Expr a, Expr b) {
  if (is_const(b, 1)) return a;
  if (is_const(a, 0) && b->op == Op::constant && b->value != 0) return make_const(0);
  if (a->op == Op::constant && b->op == Op::constant && b->value != 0)
    return make_const(a->value / b->value);
  return node({.op = Op::div, .lhs = std::move(a), .rhs = std::move(b)});
}

Expr make_pow(Expr base, int exponent) {
  if (exponent < 0) raise(ErrorCode::SyntaxError, "negative exponent");
  if (exponent == 0) return make_const(1);
  if (exponent == 1) return base;
  if (base->op == Op::constant) return make_const(std::pow(base->value, exponent));
  return node({.op = Op::pow, .exponent = exponent, .lhs = std::move(base)});
}

Expr make_call(FuncKind f, Expr arg) {
  return node({.op = Op::call, .func = f, .lhs = std::move(arg)});
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over bytes.
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)*
//   primary := number | 't' | name '(' expr ')' | '(' expr ')'
//   exponent:= integer | '(' ['-'] integer ')'
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    raise(ErrorCode::SyntaxError, why + " at byte " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+')) e = make_add(e, term());
      else if (eat('-')) e = make_sub(e, term());
      else return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) e = make_mul(e, unary());
      else if (eat('/')) e = make_div(e, unary());
      else return e;
    }
  }

  Expr unary() {
    if (eat('-')) return make_neg(unary());
    return power();
  }

  Expr power() {
    Expr e = primary();
    while (eat('^')) e = make_pow(e, exponent());
    return e;
  }

  int exponent() {
    skip_ws();
    bool parens = eat('(');
    skip_ws();
    bool negative = eat('-');
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer exponent");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail("exponent must be a non-negative integer");
    int value = 0;
    try {
      value = std::stoi(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("exponent out of range");
    }
    if (parens && !eat(')')) fail("expected ')' after exponent");
    if (negative) fail("negative exponent");
    return value;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    if (eat('(')) {
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belonged to something else
      }
    }
    try {
      return make_const(std::stod(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  Expr name() {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string id = text_.substr(start, pos_ - start);
    if (id == "t") return make_var();
    FuncKind f;
    if (id == "sin") f = FuncKind::sin;
    else if (id == "cos") f = FuncKind::cos;
    else if (id == "exp") f = FuncKind::exp;
    else if (id == "log") f = FuncKind::log;
    else if (id == "sqrt") f = FuncKind::sqrt;
    else {
      pos_ = start;
      raise(ErrorCode::UnknownIdentifier,
            "'" + id + "' at byte " + std::to_string(start));
    }
    if (!eat('(')) fail("expected '(' after function name");
    Expr arg = expr();
    if (!eat(')')) fail("expected ')'");
    return make_call(f, arg);
  }

  const std::string& text_;
  size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;  // atoms and calls never need parentheses
  }
}

void print_to(const Expr& e, std::ostringstream& out, int parent_prec, bool right_side) {
  int prec = precedence(e->op);
  // Right operands of left-associative operators at equal precedence need
  // parentheses, e.g. a - (b + c).
  bool parens = prec < parent_prec || (prec == parent_prec && right_side && prec <= 2);
  if (e->op == Op::constant && e->value < 0 && parent_prec > 0) parens = true;
  if (parens) out << '(';
  switch (e->op) {
    case Op::var: out << 't'; break;
    case Op::constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << e->value;
      out << tmp.str();
      break;
    }
    case Op::neg:
      out << '-';
      print_to(e->lhs, out, precedence(Op::neg), true);
      break;
    case Op::add:
      print_to(e->lhs, out, prec, false);
      out << " + ";
      print_to(e->rhs, out, prec, true);
      break;
    case Op::sub:
      print_to(e->lhs, out, prec, false);
      out << " - ";
      print_to(e->rhs, out, prec, true);
      break;
    case Op::mul:
      print_to(e->lhs, out, prec, false);
      out << '*';
      print_to(e->rhs, out, prec, true);
      break;
    case Op::div:
      print_to(e->lhs, out, prec, false);
      out << '/';
      print_to(e->rhs, out, prec, true);
      break;
    case Op::pow:
      print_to(e->lhs, out, precedence(Op::pow) + 1, false);
      out << '^' << e->exponent;
      break;
    case Op::call:
      out << func_name(e->func) << '(';
      print_to(e->lhs, out, 0, false);
      out << ')';
      break;
  }
  if (parens) out << ')';
}

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Expr& e) {
  std::ostringstream out;
  print_to(e, out, 0, false);
  return out.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::var: return true;
    case Op::constant: return a->value == b->value;
    case Op::neg: return structurally_equal(a->lhs, b->lhs);
    case Op::pow:
      return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    case Op::call:
      return a->func == b->func && structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

Expr differentiate(const Expr& e) {
  switch (e->op) {
    case Op::var: return make_const(1);
    case Op::constant: return make_const(0);
    case Op::neg: return make_neg(differentiate(e->lhs));
    case Op::add: return make_add(differentiate(e->lhs), differentiate(e->rhs));
    case Op::sub: return make_sub(differentiate(e->lhs), differentiate(e->rhs));
    case Op::mul:
      return make_add(make_mul(differentiate(e->lhs), e->rhs),
                      make_mul(e->lhs, differentiate(e->rhs)));
    case Op::div:
      return make_div(make_sub(make_mul(differentiate(e->lhs), e->rhs),
                               make_mul(e->lhs, differentiate(e->rhs))),
                      make_pow(e->rhs, 2));
    case Op::pow:
      return make_mul(make_mul(make_const(e->exponent), make_pow(e->lhs, e->exponent - 1)),
                      differentiate(e->lhs));
    case Op::call: {
      Expr inner = differentiate(e->lhs);
      switch (e->func) {
        case FuncKind::sin: return make_mul(make_call(FuncKind::cos, e->lhs), inner);
        case FuncKind::cos:
          return make_neg(make_mul(make_call(FuncKind::sin, e->lhs), inner));
        case FuncKind::exp: return make_mul(make_call(FuncKind::exp, e->lhs), inner);
        case FuncKind::log: return make_div(inner, e->lhs);
        case FuncKind::sqrt:
          return make_div(inner, make_mul(make_const(2), make_call(FuncKind::sqrt, e->lhs)));
      }
      break;
    }
  }
  raise(ErrorCode::InvalidArgument, "unhandled expression node");
}

double evaluate(const Expr& e, double t) {
  switch (e->op) {
    case Op::var: return t;
    case Op::constant: return e->value;
    case Op::neg: return -evaluate(e->lhs, t);
    case Op::add: return evaluate(e->lhs, t) + evaluate(e->rhs, t);
    case Op::sub: return evaluate(e->lhs, t) - evaluate(e->rhs, t);
    case Op::mul: return evaluate(e->lhs, t) * evaluate(e->rhs, t);
    case Op::div: {
      double denom = evaluate(e->rhs, t);
      if (denom == 0.0) raise(ErrorCode::DomainError, "division by zero at t=" + std::to_string(t));
      return evaluate(e->lhs, t) / denom;
    }
    case Op::pow: {
      double base = evaluate(e->lhs, t);
      double r = 1.0;
      for (int i = 0; i < e->exponent; ++i) r *= base;
      return r;
    }
    case Op::call: {
      double x = evaluate(e->lhs, t);
      switch (e->func) {
        case FuncKind::sin: return std::sin(x);
        case FuncKind::cos: return std::cos(x);
        case FuncKind::exp: return std::exp(x);
        case FuncKind::log:
          if (x <= 0.0) raise(ErrorCode::DomainError, "log of non-positive value at t=" + std::to_string(t));
          return std::log(x);
        case FuncKind::sqrt:
          if (x < 0.0) raise(ErrorCode::DomainError, "sqrt of negative value at t=" + std::to_string(t));
          return std::sqrt(x);
      }
      break;
    }
  }
  raise(ErrorCode::InvalidArgument, "unhandled expression node");
}

namespace {

using Poly = std::vector<double>;

std::optional<Poly> poly_of(const Expr& e, int max_degree);

std::optional<Poly> poly_mul(const Poly& a, const Poly& b, int max_degree) {
  if (static_cast<int>(a.size() + b.size()) - 2 > max_degree) {
    // Allow higher intermediate degree only if leading terms are zero.
    // Cheaper to just reject; callers use generous max_degree.
    return std::nullopt;
  }
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::optional<Poly> poly_of(const Expr& e, int max_degree) {
  switch (e->op) {
    case Op::var: return Poly{0.0, 1.0};
    case Op::constant: return Poly{e->value};
    case Op::neg: {
      auto p = poly_of(e->lhs, max_degree);
      if (!p) return std::nullopt;
      for (double& c : *p) c = -c;
      return p;
    }
    case Op::add:
    case Op::sub: {
      auto a = poly_of(e->lhs, max_degree);
      auto b = poly_of(e->rhs, max_degree);
      if (!a || !b) return std::nullopt;
      Poly out(std::max(a->size(), b->size()), 0.0);
      for (size_t i = 0; i < a->size(); ++i) out[i] += (*a)[i];
      double sign = e->op == Op::sub ? -1.0 : 1.0;
      for (size_t i = 0; i < b->size(); ++i) out[i] += sign * (*b)[i];
      return out;
    }
    case Op::mul: {
      auto a = poly_of(e->lhs, max_degree);
      auto b = poly_of(e->rhs, max_degree);
      if (!a || !b) return std::nullopt;
      return poly_mul(*a, *b, max_degree);
    }
    case Op::div: {
      if (e->rhs->op != Op::constant || e->rhs->value == 0.0) return std::nullopt;
      auto a = poly_of(e->lhs, max_degree);
      if (!a) return std::nullopt;
      for (double& c : *a) c /= e->rhs->value;
      return a;
    }
    case Op::pow: {
      auto base = poly_of(e->lhs, max_degree);
      if (!base) return std::nullopt;
      Poly out{1.0};
      for (int i = 0; i < e->exponent; ++i) {
        auto next = poly_mul(out, *base, max_degree);
        if (!next) return std::nullopt;
        out = *next;
      }
      return out;
    }
    case Op::call: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<double>> as_polynomial(const Expr& e, int max_degree) {
  auto p = poly_of(e, max_degree);
  if (!p) return std::nullopt;
  while (p->size() > 1 && p->back() == 0.0) p->pop_back();
  if (static_cast<int>(p->size()) - 1 > max_degree) return std::nullopt;
  return p;
}

// ---------------------------------------------------------------------------
// ParamFunction
// ---------------------------------------------------------------------------

ParamFunction ParamFunction::identity() { return {Kind::identity, 0.0, {}}; }

ParamFunction ParamFunction::constant(double c) {
  if (!(c >= 0.0 && c <= 1.0))
    raise(ErrorCode::ValidationError, "psi constant must lie in [0,1]");
  return {Kind::constant, c, {}};
}

ParamFunction ParamFunction::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    raise(ErrorCode::ValidationError, "psi power exponent must be positive");
  return {Kind::power, p, {}};
}

ParamFunction ParamFunction::table(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2)
    raise(ErrorCode::ValidationError, "psi table needs at least two knots");
  if (knots.front().first != 0.0 || knots.back().first != 1.0)
    raise(ErrorCode::ValidationError, "psi table must span lambda 0 to 1");
  for (size_t i = 0; i < knots.size(); ++i) {
    if (i > 0 && !(knots[i].first > knots[i - 1].first))
      raise(ErrorCode::ValidationError, "psi table knots must be strictly increasing");
    if (!(knots[i].second >= 0.0 && knots[i].second <= 1.0))
      raise(ErrorCode::ValidationError, "psi table values must lie in [0,1]");
  }
  ParamFunction f{Kind::table, 0.0, std::move(knots)};
  // Dense sweep: redundant for linear interpolation between in-range knots,
  // kept as the documented validation of the [0,1] -> [0,1] invariant.
  for (int i = 0; i <= 10000; ++i) {
    double v = f(i / 10000.0);
    if (!(v >= 0.0 && v <= 1.0))
      raise(ErrorCode::ValidationError, "psi table escapes [0,1]");
  }
  return f;
}

double ParamFunction::operator()(double lambda) const {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    raise(ErrorCode::OutOfRange, "psi argument must lie in [0,1]");
  switch (kind_) {
    case Kind::identity: return lambda;
    case Kind::constant: return param_;
    case Kind::power: return std::pow(lambda, param_);
    case Kind::table: {
      auto it = std::lower_bound(
          knots_.begin(), knots_.end(), lambda,
          [](const std::pair<double, double>& k, double v) { return k.first < v; });
      if (it == knots_.begin()) return it->second;
      if (it == knots_.end()) return knots_.back().second;
      auto prev = it - 1;
      double span = it->first - prev->first;
      double u = (lambda - prev->first) / span;
      return prev->second + u * (it->second - prev->second);
    }
  }
  raise(ErrorCode::InvalidArgument, "unhandled psi kind");
}

}  // namespace tsineq
