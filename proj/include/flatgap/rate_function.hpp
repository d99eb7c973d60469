#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace flatgap {

// A nondecreasing rate function psi: [1, inf) -> [1, inf), given as an
// expression over {log, loglog, sqrt, powers, constants, +, -, *, /} in the
// variable t, e.g. "sqrt(log(t+4)*loglog(t+4))".
//
// Evaluation clamps from below: psi(t) = max(1, expr(max(t, 1))). The clamp
// makes the usual catalog functions (which dip below 1 near t = 1) valid
// rate functions without changing any tail behavior.
//
// Construction validates, on a 10^4-point geometric grid over [1, 1e9], that
// the expression is evaluable and the clamped values are non-decreasing.
class RateFunction {
 public:
  // throws Error(ParseError) on syntax or validation failure
  static RateFunction parse(std::string_view expression);

  // psi(t)
  double operator()(double t) const;
  // log psi(e^u); evaluated in log-space so u may far exceed 709
  double log_value(double u) const;

  const std::string& expression() const { return text_; }

  RateFunction(const RateFunction&);
  RateFunction& operator=(const RateFunction&);
  RateFunction(RateFunction&&) noexcept;
  RateFunction& operator=(RateFunction&&) noexcept;
  ~RateFunction();

  struct Node;  // expression tree; defined in the implementation

 private:
  RateFunction(std::shared_ptr<const Node> root, std::string text);

  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace flatgap
