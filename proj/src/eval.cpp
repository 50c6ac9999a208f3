#include "certinum/eval.hpp"

#include <quadmath.h>

#include <cmath>

#include "certinum/util.hpp"

namespace certinum::lang {

namespace {

constexpr int kMaxCallDepth = 64;

[[noreturn]] void err(const std::string& msg) { throw EvalError(msg); }

bool integral(double x) { return std::isfinite(x) && x == std::floor(x); }

// Exponent of Pow as a nonnegative integer.
std::uint64_t exponent_nat(const Value& v) {
  if (v.is_nat()) return v.nat;
  if (v.is_real() && integral(v.real) && v.real >= 0 && v.real <= 0x1p53)
    return static_cast<std::uint64_t>(v.real);
  err("pow exponent must be a nonnegative integer");
}

struct EvalCtx {
  const Env& env;
  const Funcs& funcs;
  const AuditOptions* audit = nullptr;  // nullptr: plain semantics
};

Value eval_val(const Expr& e, const EvalCtx& ctx, int depth);

// ceil(log2(a / b)) decided by exact halving instead of floating logs.
bool match_ceil_log2_div(const Expr& e, const Expr*& num, const Expr*& den) {
  if (e.kind != ExprKind::Ceil) return false;
  const Expr& l = *e.args[0];
  if (l.kind != ExprKind::Log2) return false;
  const Expr& d = *l.args[0];
  if (d.kind != ExprKind::Div) return false;
  num = d.args[0].get();
  den = d.args[1].get();
  return true;
}

Value scalar_bin(const Expr& e, const EvalCtx& ctx, int depth) {
  Value a = eval_val(*e.args[0], ctx, depth);
  Value b = eval_val(*e.args[1], ctx, depth);
  if (a.is_vec() || b.is_vec()) err("vector operand in scalar arithmetic");
  bool nats = a.is_nat() && b.is_nat();
  switch (e.kind) {
    case ExprKind::Add:
      if (nats) return Value::of_nat(a.nat + b.nat);
      return Value::of_real(a.as_double() + b.as_double());
    case ExprKind::Sub:
      if (nats) {
        if (a.nat >= b.nat) return Value::of_nat(a.nat - b.nat);
        // observable negative result rather than Isabelle's truncated monus:
        // variant audits must be able to see descent below zero
        return Value::of_real(static_cast<double>(a.nat) - static_cast<double>(b.nat));
      }
      return Value::of_real(a.as_double() - b.as_double());
    case ExprKind::Mul:
      if (nats) return Value::of_nat(a.nat * b.nat);
      return Value::of_real(a.as_double() * b.as_double());
    case ExprKind::Div: {
      double d = b.as_double();
      if (d == 0.0) err("division by zero");
      return Value::of_real(a.as_double() / d);
    }
    case ExprKind::Min:
      if (nats) return Value::of_nat(std::min(a.nat, b.nat));
      return Value::of_real(std::fmin(a.as_double(), b.as_double()));
    case ExprKind::Max:
      if (nats) return Value::of_nat(std::max(a.nat, b.nat));
      return Value::of_real(std::fmax(a.as_double(), b.as_double()));
    default:
      err("not a binary scalar op");
  }
}

Value eval_val(const Expr& e, const EvalCtx& ctx, int depth) {
  if (ctx.audit && ctx.audit->ceil_log_bracketing) {
    const Expr* num = nullptr;
    const Expr* den = nullptr;
    if (match_ceil_log2_div(e, num, den)) {
      double a = eval_val(*num, ctx, depth).as_double();
      double b = eval_val(*den, ctx, depth).as_double();
      if (a > 0 && b > 0) return Value::of_real(static_cast<double>(least_halvings(a, b)));
    }
  }
  switch (e.kind) {
    case ExprKind::Const:
      return Value::of_real(e.value);
    case ExprKind::NatConst:
      return Value::of_nat(e.nat);
    case ExprKind::Var: {
      auto it = ctx.env.find(e.name);
      if (it == ctx.env.end()) err("unbound variable '" + e.name + "'");
      return it->second;
    }
    case ExprKind::Neg: {
      Value v = eval_val(*e.args[0], ctx, depth);
      if (v.is_vec()) err("cannot negate a vector");
      return Value::of_real(-v.as_double());
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Min:
    case ExprKind::Max:
      return scalar_bin(e, ctx, depth);
    case ExprKind::Pow: {
      Value base = eval_val(*e.args[0], ctx, depth);
      std::uint64_t k = exponent_nat(eval_val(*e.args[1], ctx, depth));
      if (base.is_vec()) err("cannot exponentiate a vector");
      double r = 1.0;
      double b = base.as_double();
      for (std::uint64_t i = 0; i < k; ++i) r *= b;
      if (base.is_nat() && integral(r) && r >= 0 && r <= 0x1p53)
        return Value::of_nat(static_cast<std::uint64_t>(r));
      return Value::of_real(r);
    }
    case ExprKind::Abs: {
      Value v = eval_val(*e.args[0], ctx, depth);
      if (v.is_nat()) return v;
      if (v.is_vec()) err("abs of a vector");
      return Value::of_real(std::fabs(v.real));
    }
    case ExprKind::Floor:
    case ExprKind::Ceil: {
      Value v = eval_val(*e.args[0], ctx, depth);
      if (v.is_nat()) return v;
      if (v.is_vec()) err("floor/ceil of a vector");
      return Value::of_real(e.kind == ExprKind::Floor ? std::floor(v.real) : std::ceil(v.real));
    }
    case ExprKind::Log2: {
      double x = eval_val(*e.args[0], ctx, depth).as_double();
      if (x <= 0.0) err("log2 of non-positive argument");
      return Value::of_real(std::log2(x));
    }
    case ExprKind::Exp:
      return Value::of_real(std::exp(eval_val(*e.args[0], ctx, depth).as_double()));
    case ExprKind::Ln: {
      double x = eval_val(*e.args[0], ctx, depth).as_double();
      if (x <= 0.0) err("ln of non-positive argument");
      return Value::of_real(std::log(x));
    }
    case ExprKind::Sin:
      return Value::of_real(std::sin(eval_val(*e.args[0], ctx, depth).as_double()));
    case ExprKind::Cos:
      return Value::of_real(std::cos(eval_val(*e.args[0], ctx, depth).as_double()));
    case ExprKind::Apply: {
      auto it = ctx.funcs.find(e.name);
      if (it == ctx.funcs.end()) err("unknown function '" + e.name + "'");
      if (depth >= kMaxCallDepth) err("function recursion too deep");
      Value arg = eval_val(*e.args[0], ctx, depth);
      Env local{{it->second.formal, arg}};
      EvalCtx inner{local, ctx.funcs, ctx.audit};
      return eval_val(*it->second.body, inner, depth + 1);
    }
    case ExprKind::Index: {
      auto it = ctx.env.find(e.name);
      if (it == ctx.env.end()) err("unbound variable '" + e.name + "'");
      if (!it->second.is_vec()) err("'" + e.name + "' is not a vector");
      Value idx = eval_val(*e.args[0], ctx, depth);
      double di = idx.as_double();
      if (!integral(di) || di < 0) err("vector index must be a nonnegative integer");
      auto i = static_cast<std::size_t>(di);
      if (i >= it->second.vec.size()) err("vector index out of range");
      return Value::of_real(it->second.vec[i]);
    }
    case ExprKind::Iterate: {
      auto it = ctx.funcs.find(e.name);
      if (it == ctx.funcs.end()) err("unknown function '" + e.name + "'");
      Value count = eval_val(*e.args[0], ctx, depth);
      double dc = count.as_double();
      if (!integral(dc) || dc < 0) err("iterate count must be a nonnegative integer");
      Value v = eval_val(*e.args[1], ctx, depth);
      auto n = static_cast<std::uint64_t>(dc);
      for (std::uint64_t i = 0; i < n; ++i) {
        Env local{{it->second.formal, v}};
        EvalCtx inner{local, ctx.funcs, ctx.audit};
        v = eval_val(*it->second.body, inner, depth + 1);
      }
      return v;
    }
  }
  err("unhandled expression kind");
}

// -- condition evaluation ----------------------------------------------------

double magnitude_scale(const Expr& lhs, const Expr& rhs, const Env& env, double l, double r) {
  double scale = std::max(std::fabs(l), std::fabs(r));
  std::vector<std::string> names;
  collect_vars(lhs, names);
  collect_vars(rhs, names);
  for (const auto& n : names) {
    auto it = env.find(n);
    if (it == env.end()) continue;
    const Value& v = it->second;
    switch (v.kind) {
      case Value::Kind::Real:
        scale = std::max(scale, std::fabs(v.real));
        break;
      case Value::Kind::Nat:
        scale = std::max(scale, static_cast<double>(v.nat));
        break;
      case Value::Kind::Vec:
        for (double x : v.vec) scale = std::max(scale, std::fabs(x));
        break;
    }
  }
  return scale;
}

bool values_equal(const Expr& le, const Expr& re, const Value& l, const Value& r,
                  const EvalCtx& ctx) {
  if (l.is_vec() || r.is_vec()) {
    if (!l.is_vec() || !r.is_vec() || l.vec.size() != r.vec.size()) return false;
    unsigned k = ctx.audit ? ctx.audit->eq_ulps : 0;
    for (std::size_t i = 0; i < l.vec.size(); ++i) {
      double scale = k ? magnitude_scale(le, re, ctx.env, l.vec[i], r.vec[i]) : 0.0;
      if (!eq_within_ulps(l.vec[i], r.vec[i], k, scale)) return false;
    }
    return true;
  }
  if (l.is_nat() && r.is_nat()) return l.nat == r.nat;
  double dl = l.as_double(), dr = r.as_double();
  unsigned k = ctx.audit ? ctx.audit->eq_ulps : 0;
  if (k == 0) return dl == dr;
  return eq_within_ulps(dl, dr, k, magnitude_scale(le, re, ctx.env, dl, dr));
}

bool eval_cond_impl(const Cond& c, const EvalCtx& ctx) {
  switch (c.kind) {
    case CondKind::True:
      return true;
    case CondKind::False:
      return false;
    case CondKind::Cmp: {
      Value l = eval_val(*c.lhs, ctx, 0);
      Value r = eval_val(*c.rhs, ctx, 0);
      switch (c.op) {
        case CmpOp::Eq:
          return values_equal(*c.lhs, *c.rhs, l, r, ctx);
        case CmpOp::Ne:
          return !values_equal(*c.lhs, *c.rhs, l, r, ctx);
        case CmpOp::Lt:
          if (l.is_nat() && r.is_nat()) return l.nat < r.nat;
          return l.as_double() < r.as_double();
        case CmpOp::Le:
          if (l.is_nat() && r.is_nat()) return l.nat <= r.nat;
          return l.as_double() <= r.as_double();
      }
      return false;
    }
    case CondKind::Not:
      return !eval_cond_impl(*c.kids[0], ctx);
    case CondKind::And:
      return eval_cond_impl(*c.kids[0], ctx) && eval_cond_impl(*c.kids[1], ctx);
    case CondKind::Or:
      return eval_cond_impl(*c.kids[0], ctx) || eval_cond_impl(*c.kids[1], ctx);
    case CondKind::Implies:
      return !eval_cond_impl(*c.kids[0], ctx) || eval_cond_impl(*c.kids[1], ctx);
    case CondKind::Forall:
    case CondKind::Exists: {
      Value b = eval_val(*c.bound, ctx, 0);
      double db = b.as_double();
      if (!integral(db) || db < 0) err("quantifier bound must be a nonnegative integer");
      auto n = static_cast<std::uint64_t>(db);
      bool is_forall = c.kind == CondKind::Forall;
      Env local = ctx.env;
      for (std::uint64_t k = 0; k < n; ++k) {
        local[c.binder] = Value::of_nat(k);
        EvalCtx inner{local, ctx.funcs, ctx.audit};
        bool v = eval_cond_impl(*c.body, inner);
        if (is_forall && !v) return false;
        if (!is_forall && v) return true;
      }
      return is_forall;
    }
  }
  return false;
}

// -- extended-precision scalar evaluation -------------------------------------

template <class T>
struct MathOps;

template <>
struct MathOps<long double> {
  static long double sin(long double x) { return sinl(x); }
  static long double cos(long double x) { return cosl(x); }
  static long double exp(long double x) { return expl(x); }
  static long double log(long double x) { return logl(x); }
  static long double log2(long double x) { return log2l(x); }
  static long double fabs(long double x) { return fabsl(x); }
  static long double floor(long double x) { return floorl(x); }
  static long double ceil(long double x) { return ceill(x); }
};

template <>
struct MathOps<__float128> {
  static __float128 sin(__float128 x) { return sinq(x); }
  static __float128 cos(__float128 x) { return cosq(x); }
  static __float128 exp(__float128 x) { return expq(x); }
  static __float128 log(__float128 x) { return logq(x); }
  static __float128 log2(__float128 x) { return log2q(x); }
  static __float128 fabs(__float128 x) { return fabsq(x); }
  static __float128 floor(__float128 x) { return floorq(x); }
  static __float128 ceil(__float128 x) { return ceilq(x); }
};

template <class T>
T eval_scalar_with(const Expr& e, const std::string& name, T value, const Funcs& funcs,
                   int depth);

template <class T>
T eval_scalar(const Expr& e, const Env& env, const Funcs& funcs, int depth) {
  using M = MathOps<T>;
  auto rec = [&](const Expr& sub) { return eval_scalar<T>(sub, env, funcs, depth); };
  switch (e.kind) {
    case ExprKind::Const:
      return static_cast<T>(e.value);
    case ExprKind::NatConst:
      return static_cast<T>(e.nat);
    case ExprKind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) err("unbound variable '" + e.name + "'");
      if (it->second.is_vec()) err("vector in scalar context");
      return it->second.is_nat() ? static_cast<T>(it->second.nat)
                                 : static_cast<T>(it->second.real);
    }
    case ExprKind::Neg:
      return -rec(*e.args[0]);
    case ExprKind::Add:
      return rec(*e.args[0]) + rec(*e.args[1]);
    case ExprKind::Sub:
      return rec(*e.args[0]) - rec(*e.args[1]);
    case ExprKind::Mul:
      return rec(*e.args[0]) * rec(*e.args[1]);
    case ExprKind::Div: {
      T d = rec(*e.args[1]);
      if (d == 0) err("division by zero");
      return rec(*e.args[0]) / d;
    }
    case ExprKind::Pow: {
      T b = rec(*e.args[0]);
      std::uint64_t k = exponent_nat(eval_expr(*e.args[1], env, funcs));
      T r = 1;
      for (std::uint64_t i = 0; i < k; ++i) r *= b;
      return r;
    }
    case ExprKind::Abs:
      return M::fabs(rec(*e.args[0]));
    case ExprKind::Min: {
      T a = rec(*e.args[0]), b = rec(*e.args[1]);
      return a < b ? a : b;
    }
    case ExprKind::Max: {
      T a = rec(*e.args[0]), b = rec(*e.args[1]);
      return a < b ? b : a;
    }
    case ExprKind::Floor:
      return M::floor(rec(*e.args[0]));
    case ExprKind::Ceil:
      return M::ceil(rec(*e.args[0]));
    case ExprKind::Log2: {
      T x = rec(*e.args[0]);
      if (x <= 0) err("log2 of non-positive argument");
      return M::log2(x);
    }
    case ExprKind::Exp:
      return M::exp(rec(*e.args[0]));
    case ExprKind::Ln: {
      T x = rec(*e.args[0]);
      if (x <= 0) err("ln of non-positive argument");
      return M::log(x);
    }
    case ExprKind::Sin:
      return M::sin(rec(*e.args[0]));
    case ExprKind::Cos:
      return M::cos(rec(*e.args[0]));
    case ExprKind::Apply: {
      auto it = funcs.find(e.name);
      if (it == funcs.end()) err("unknown function '" + e.name + "'");
      if (depth >= kMaxCallDepth) err("function recursion too deep");
      T arg = rec(*e.args[0]);
      return eval_scalar_with<T>(*it->second.body, it->second.formal, arg, funcs, depth + 1);
    }
    case ExprKind::Index: {
      auto it = env.find(e.name);
      if (it == env.end() || !it->second.is_vec()) err("'" + e.name + "' is not a vector");
      Value idx = eval_expr(*e.args[0], env, funcs);
      double di = idx.as_double();
      if (!integral(di) || di < 0 || static_cast<std::size_t>(di) >= it->second.vec.size())
        err("vector index out of range");
      return static_cast<T>(it->second.vec[static_cast<std::size_t>(di)]);
    }
    case ExprKind::Iterate: {
      auto it = funcs.find(e.name);
      if (it == funcs.end()) err("unknown function '" + e.name + "'");
      double dc = eval_expr(*e.args[0], env, funcs).as_double();
      if (!integral(dc) || dc < 0) err("iterate count must be a nonnegative integer");
      T v = rec(*e.args[1]);
      for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dc); ++i)
        v = eval_scalar_with<T>(*it->second.body, it->second.formal, v, funcs, depth + 1);
      return v;
    }
  }
  err("unhandled expression kind");
}

/// eval_scalar with one binding held at extended precision.
template <class T>
T eval_scalar_with(const Expr& e, const std::string& name, T value, const Funcs& funcs,
                   int depth) {
  if (e.kind == ExprKind::Var && e.name == name) return value;
  using M = MathOps<T>;
  auto rec = [&](const Expr& sub) {
    return eval_scalar_with<T>(sub, name, value, funcs, depth);
  };
  switch (e.kind) {
    case ExprKind::Const:
      return static_cast<T>(e.value);
    case ExprKind::NatConst:
      return static_cast<T>(e.nat);
    case ExprKind::Var:
      err("unbound variable '" + e.name + "' in function body");
    case ExprKind::Neg:
      return -rec(*e.args[0]);
    case ExprKind::Add:
      return rec(*e.args[0]) + rec(*e.args[1]);
    case ExprKind::Sub:
      return rec(*e.args[0]) - rec(*e.args[1]);
    case ExprKind::Mul:
      return rec(*e.args[0]) * rec(*e.args[1]);
    case ExprKind::Div: {
      T d = rec(*e.args[1]);
      if (d == 0) err("division by zero");
      return rec(*e.args[0]) / d;
    }
    case ExprKind::Pow: {
      T b = rec(*e.args[0]);
      std::uint64_t k = exponent_nat(eval_expr(*e.args[1], Env{}, funcs));
      T r = 1;
      for (std::uint64_t i = 0; i < k; ++i) r *= b;
      return r;
    }
    case ExprKind::Abs:
      return M::fabs(rec(*e.args[0]));
    case ExprKind::Min: {
      T a = rec(*e.args[0]), b = rec(*e.args[1]);
      return a < b ? a : b;
    }
    case ExprKind::Max: {
      T a = rec(*e.args[0]), b = rec(*e.args[1]);
      return a < b ? b : a;
    }
    case ExprKind::Floor:
      return M::floor(rec(*e.args[0]));
    case ExprKind::Ceil:
      return M::ceil(rec(*e.args[0]));
    case ExprKind::Log2: {
      T x = rec(*e.args[0]);
      if (x <= 0) err("log2 of non-positive argument");
      return M::log2(x);
    }
    case ExprKind::Exp:
      return M::exp(rec(*e.args[0]));
    case ExprKind::Ln: {
      T x = rec(*e.args[0]);
      if (x <= 0) err("ln of non-positive argument");
      return M::log(x);
    }
    case ExprKind::Sin:
      return M::sin(rec(*e.args[0]));
    case ExprKind::Cos:
      return M::cos(rec(*e.args[0]));
    case ExprKind::Apply: {
      auto it = funcs.find(e.name);
      if (it == funcs.end()) err("unknown function '" + e.name + "'");
      if (depth >= kMaxCallDepth) err("function recursion too deep");
      T arg = rec(*e.args[0]);
      return eval_scalar_with<T>(*it->second.body, it->second.formal, arg, funcs, depth + 1);
    }
    default:
      err("unsupported node in function body");
  }
}

}  // namespace

Value eval_expr(const Expr& e, const Env& env, const Funcs& funcs) {
  EvalCtx ctx{env, funcs, nullptr};
  return eval_val(e, ctx, 0);
}

Value eval_expr_audit(const Expr& e, const Env& env, const Funcs& funcs,
                      const AuditOptions& opts) {
  EvalCtx ctx{env, funcs, &opts};
  return eval_val(e, ctx, 0);
}

bool eval_cond(const Cond& c, const Env& env, const Funcs& funcs) {
  EvalCtx ctx{env, funcs, nullptr};
  return eval_cond_impl(c, ctx);
}

bool eval_cond(const Cond& c, const Env& env, const Funcs& funcs, const AuditOptions& opts) {
  EvalCtx ctx{env, funcs, &opts};
  return eval_cond_impl(c, ctx);
}

std::uint64_t least_halvings(double num, double den) {
  std::uint64_t k = 0;
  double w = num;
  while (w > den && k < 4400) {
    w /= 2;
    ++k;
  }
  return k;
}

long double eval_expr_ext(const Expr& e, const Env& env, const Funcs& funcs) {
  return eval_scalar<long double>(e, env, funcs, 0);
}

__float128 eval_expr_quad(const Expr& e, const Env& env, const Funcs& funcs) {
  return eval_scalar<__float128>(e, env, funcs, 0);
}

}  // namespace certinum::lang
