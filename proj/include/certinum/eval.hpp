#pragma once

#include <stdexcept>
#include <string>

#include "certinum/expr.hpp"

namespace certinum::lang {

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by jet evaluation at a kink of Abs/Min/Max/Floor/Ceil.
struct NonSmoothError : EvalError {
  explicit NonSmoothError(const std::string& msg) : EvalError(msg) {}
};

/// Evaluate an expression under an environment. Real arithmetic is binary64;
/// Nat arithmetic is exact. Throws EvalError on unbound variables, division
/// by zero, Ln/Log2 of a non-positive argument, and out-of-range indexing.
Value eval_expr(const Expr& e, const Env& env, const Funcs& funcs);

/// Two-valued condition evaluation; bounded quantifiers expand over
/// 0..bound-1. Real equality is exact binary64 equality.
bool eval_cond(const Cond& c, const Env& env, const Funcs& funcs);

/// Knobs for runtime audits (hoare module). Separate from plain evaluation:
/// eval_expr/eval_cond above keep the exact language semantics.
struct AuditOptions {
  /// Real = Real comparisons pass when |l - r| <= eq_ulps * ulp(scale), where
  /// scale is the largest magnitude among both sides and the real-valued
  /// variables they mention. 0 means exact.
  unsigned eq_ulps = 0;
  /// Evaluate ceil(log2(a / b)) subterms by integer halving of a against b
  /// instead of floating-point logarithms.
  bool ceil_log_bracketing = false;
};

bool eval_cond(const Cond& c, const Env& env, const Funcs& funcs, const AuditOptions& opts);

/// Expression evaluation under audit options (ceil-log bracketing applies;
/// plain arithmetic otherwise identical to eval_expr).
Value eval_expr_audit(const Expr& e, const Env& env, const Funcs& funcs,
                      const AuditOptions& opts);

/// Least k >= 0 with ratio_num / 2^k <= ratio_den, by exact halving.
/// Requires ratio_num, ratio_den > 0.
std::uint64_t least_halvings(double ratio_num, double ratio_den);

/// Extended-precision expression evaluation over a scalar environment.
/// Vec/Index/quantifier-free subsets only need scalars; full Expr supported
/// with vector reads taken from the binary64 environment.
long double eval_expr_ext(const Expr& e, const Env& env, const Funcs& funcs);
__float128 eval_expr_quad(const Expr& e, const Env& env, const Funcs& funcs);

}  // namespace certinum::lang
