#pragma once

#include <vector>

#include "certinum/eval.hpp"
#include "certinum/expr.hpp"

namespace certinum::calculus {

/// Truncated Taylor expansion at a base point: coeffs[m] = f^(m)(a) / m!.
struct Jet {
  double base = 0.0;
  int order = 0;
  std::vector<double> coeffs;  // length order + 1

  double value() const { return coeffs[0]; }
  /// f^(n)(a) recovered from the coefficient.
  double derivative(int n) const;
};

/// Jet of an expression in `var` at the point `at`, to the given order.
/// Other free variables are taken from env (constants of the expansion).
/// Abs/Min/Max/Floor/Ceil raise NonSmoothError at their kinks when order >= 1;
/// away from kinks they propagate the locally smooth branch.
Jet jet_eval(const lang::Expr& e, const std::string& var, double at, int order,
             const lang::Env& env = {}, const lang::Funcs& funcs = {});

// Coefficient-level arithmetic; exposed for tests and the calculus module.
namespace jets {
Jet constant(double v, double base, int order);
Jet variable(double at, int order);
Jet add(const Jet& a, const Jet& b);
Jet sub(const Jet& a, const Jet& b);
Jet neg(const Jet& a);
Jet mul(const Jet& a, const Jet& b);
Jet div(const Jet& a, const Jet& b);
Jet pow_nat(const Jet& a, std::uint64_t k);
Jet exp(const Jet& a);
Jet ln(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
/// Series composition outer(inner) where outer is expanded at inner.value().
Jet compose(const Jet& outer, const Jet& inner);
}  // namespace jets

}  // namespace certinum::calculus
