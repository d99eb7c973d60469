#include "flatgap/rate_function.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "flatgap/errors.hpp"
#include "flatgap/numeric.hpp"

namespace flatgap {

namespace {

// Value in signed log representation: sign * exp(lg). sign == 0 means zero.
struct LogVal {
  int sign = 0;
  double lg = -INFINITY;

  static LogVal zero() { return {0, -INFINITY}; }
  static LogVal from(double v) {
    if (v == 0.0) return zero();
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(lg); }
};

LogVal lv_add(const LogVal& a, const LogVal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.sign == b.sign) {
    const double hi = std::max(a.lg, b.lg), lo = std::min(a.lg, b.lg);
    return {a.sign, hi + std::log1p(std::exp(lo - hi))};
  }
  if (a.lg == b.lg) return LogVal::zero();
  const LogVal& big = a.lg > b.lg ? a : b;
  const LogVal& small = a.lg > b.lg ? b : a;
  return {big.sign, big.lg + std::log1p(-std::exp(small.lg - big.lg))};
}

LogVal lv_mul(const LogVal& a, const LogVal& b) {
  if (a.sign == 0 || b.sign == 0) return LogVal::zero();
  return {a.sign * b.sign, a.lg + b.lg};
}

LogVal lv_div(const LogVal& a, const LogVal& b) {
  if (b.sign == 0)
    throw Error(ErrorCode::EvaluationError, "analysis_kit",
                "division by zero in rate expression");
  if (a.sign == 0) return LogVal::zero();
  return {a.sign * b.sign, a.lg - b.lg};
}

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Log, LogLog, Sqrt, Neg };

}  // namespace

struct RateFunction::Node {
  Op op;
  double constant = 0.0;  // Const value, or Pow exponent
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double t) const {
    switch (op) {
      case Op::Const: return constant;
      case Op::Var: return t;
      case Op::Add: return lhs->eval(t) + rhs->eval(t);
      case Op::Sub: return lhs->eval(t) - rhs->eval(t);
      case Op::Mul: return lhs->eval(t) * rhs->eval(t);
      case Op::Div: return lhs->eval(t) / rhs->eval(t);
      case Op::Pow: return std::pow(lhs->eval(t), constant);
      case Op::Log: return std::log(lhs->eval(t));
      case Op::LogLog: return std::log(std::log(lhs->eval(t)));
      case Op::Sqrt: return std::sqrt(lhs->eval(t));
      case Op::Neg: return -lhs->eval(t);
    }
    return NAN;
  }

  // u = log t; every intermediate stays in log space
  LogVal eval_log(double u) const {
    switch (op) {
      case Op::Const: return LogVal::from(constant);
      case Op::Var: return {1, u};
      case Op::Add: return lv_add(lhs->eval_log(u), rhs->eval_log(u));
      case Op::Sub: {
        LogVal r = rhs->eval_log(u);
        r.sign = -r.sign;
        return lv_add(lhs->eval_log(u), r);
      }
      case Op::Mul: return lv_mul(lhs->eval_log(u), rhs->eval_log(u));
      case Op::Div: return lv_div(lhs->eval_log(u), rhs->eval_log(u));
      case Op::Pow: {
        LogVal base = lhs->eval_log(u);
        if (base.sign == 0) {
          if (constant > 0) return LogVal::zero();
          if (constant == 0) return {1, 0.0};  // pow(0, 0) == 1
          throw Error(ErrorCode::EvaluationError, "analysis_kit",
                      "zero base with negative exponent");
        }
        if (base.sign < 0) {
          const double rounded = std::nearbyint(constant);
          if (rounded != constant)
            throw Error(ErrorCode::EvaluationError, "analysis_kit",
                        "negative base with non-integer exponent");
          const bool odd = std::fmod(std::abs(rounded), 2.0) == 1.0;
          return {odd ? -1 : 1, base.lg * constant};
        }
        return {1, base.lg * constant};
      }
      case Op::Log: {
        LogVal a = lhs->eval_log(u);
        if (a.sign <= 0)
          throw Error(ErrorCode::EvaluationError, "analysis_kit",
                      "log of nonpositive value");
        return LogVal::from(a.lg);
      }
      case Op::LogLog: {
        LogVal a = lhs->eval_log(u);
        if (a.sign <= 0 || a.lg < 0.0)
          throw Error(ErrorCode::EvaluationError, "analysis_kit",
                      "loglog of value < 1");
        if (a.lg == 0.0) return {-1, INFINITY};  // loglog(1) = log 0 = -inf
        return LogVal::from(std::log(a.lg));
      }
      case Op::Sqrt: {
        LogVal a = lhs->eval_log(u);
        if (a.sign < 0)
          throw Error(ErrorCode::EvaluationError, "analysis_kit",
                      "sqrt of negative value");
        if (a.sign == 0) return LogVal::zero();
        return {1, a.lg / 2.0};
      }
      case Op::Neg: {
        LogVal a = lhs->eval_log(u);
        a.sign = -a.sign;
        return a;
      }
    }
    return LogVal::zero();
  }

  bool depends_on_t() const {
    if (op == Op::Var) return true;
    if (lhs && lhs->depends_on_t()) return true;
    if (rhs && rhs->depends_on_t()) return true;
    return false;
  }
};

namespace {

using NodePtr = std::shared_ptr<const RateFunction::Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, "analysis_kit",
                "rate expression: " + msg + " at offset " +
                    std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
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

  NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr,
               double constant = 0.0) {
    auto n = std::make_shared<RateFunction::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->constant = constant;
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (eat('+')) {
        lhs = make(Op::Add, lhs, term());
      } else if (eat('-')) {
        lhs = make(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      if (eat('*')) {
        lhs = make(Op::Mul, lhs, factor());
      } else if (eat('/')) {
        lhs = make(Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (eat('^')) {
      NodePtr e = factor();  // right associative
      if (e->depends_on_t()) fail("exponent must be constant");
      return make(Op::Pow, b, nullptr, e->eval(0.0));
    }
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return make(Op::Neg, base());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.'))
      ++pos_;
    auto v = parse_double(text_.substr(start, pos_ - start));
    if (!v) fail("bad numeric literal");
    return make(Op::Const, nullptr, nullptr, *v);
  }

  NodePtr identifier() {
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return make(Op::Var);
    Op op;
    if (name == "log") {
      op = Op::Log;
    } else if (name == "loglog") {
      op = Op::LogLog;
    } else if (name == "sqrt") {
      op = Op::Sqrt;
    } else {
      fail("unknown identifier '" + std::string(name) + "'");
    }
    if (!eat('(')) fail("expected '(' after function name");
    NodePtr arg = expr();
    if (!eat(')')) fail("missing ')'");
    return make(op, arg);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

RateFunction RateFunction::parse(std::string_view expression) {
  NodePtr root = Parser(expression).parse();
  RateFunction f(root, std::string(expression));

  // validation grid: 10^4 points, geometric over [1, 1e9]. At t = 1 exactly,
  // expressions like log(t)*loglog(t)^2 hit an IEEE 0*inf; their limit from
  // the right is what the clamp sees, so NaN is tolerated only there.
  const int kGridPoints = 10000;
  const double log_hi = std::log(1e9);
  double prev = -INFINITY;
  for (int i = 0; i <= kGridPoints; ++i) {
    const double t = std::exp(log_hi * i / kGridPoints);
    double raw;
    try {
      raw = root->eval(t);
    } catch (const Error&) {
      raw = NAN;
    }
    if (std::isnan(raw) && i == 0) continue;
    if (std::isnan(raw) || raw == INFINITY)
      throw Error(ErrorCode::ParseError, "analysis_kit",
                  "rate expression not evaluable at t = " + format_double(t));
    const double clamped = std::max(1.0, raw);
    if (clamped < prev * (1.0 - 1e-12) - 1e-12)
      throw Error(ErrorCode::ParseError, "analysis_kit",
                  "rate expression is decreasing near t = " +
                      format_double(t));
    prev = std::max(prev, clamped);
  }
  return f;
}

double RateFunction::operator()(double t) const {
  const double clamped_t = std::max(t, 1.0);
  const double raw = root_->eval(clamped_t);
  if (std::isnan(raw)) {
    if (clamped_t <= 1.0 + 1e-9) return 1.0;  // boundary indeterminacy
    throw Error(ErrorCode::EvaluationError, "analysis_kit",
                "rate expression undefined at t = " + format_double(t));
  }
  return std::max(1.0, raw);
}

double RateFunction::log_value(double u) const {
  const LogVal v = root_->eval_log(std::max(u, 0.0));
  if (v.sign <= 0) return 0.0;  // clamp to 1
  return std::max(0.0, v.lg);
}

RateFunction::RateFunction(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

RateFunction::RateFunction(const RateFunction&) = default;
RateFunction& RateFunction::operator=(const RateFunction&) = default;
RateFunction::RateFunction(RateFunction&&) noexcept = default;
RateFunction& RateFunction::operator=(RateFunction&&) noexcept = default;
RateFunction::~RateFunction() = default;

}  // namespace flatgap
