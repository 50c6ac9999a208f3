#include "certinum/jet.hpp"

#include <cmath>

namespace certinum::calculus {

using lang::EvalError;
using lang::Expr;
using lang::ExprKind;
using lang::NonSmoothError;

double Jet::derivative(int n) const {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return coeffs[static_cast<std::size_t>(n)] * f;
}

namespace jets {

Jet constant(double v, double base, int order) {
  Jet j;
  j.base = base;
  j.order = order;
  j.coeffs.assign(static_cast<std::size_t>(order) + 1, 0.0);
  j.coeffs[0] = v;
  return j;
}

Jet variable(double at, int order) {
  Jet j = constant(at, at, order);
  if (order >= 1) j.coeffs[1] = 1.0;
  return j;
}

Jet add(const Jet& a, const Jet& b) {
  Jet j = a;
  for (std::size_t i = 0; i < j.coeffs.size(); ++i) j.coeffs[i] += b.coeffs[i];
  return j;
}

Jet sub(const Jet& a, const Jet& b) {
  Jet j = a;
  for (std::size_t i = 0; i < j.coeffs.size(); ++i) j.coeffs[i] -= b.coeffs[i];
  return j;
}

Jet neg(const Jet& a) {
  Jet j = a;
  for (auto& c : j.coeffs) c = -c;
  return j;
}

Jet mul(const Jet& a, const Jet& b) {
  Jet j = constant(0.0, a.base, a.order);
  std::size_t n = j.coeffs.size();
  for (std::size_t m = 0; m < n; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k <= m; ++k) s += a.coeffs[k] * b.coeffs[m - k];
    j.coeffs[m] = s;
  }
  return j;
}

Jet div(const Jet& a, const Jet& b) {
  if (b.coeffs[0] == 0.0) throw EvalError("division by zero");
  Jet q = constant(0.0, a.base, a.order);
  std::size_t n = q.coeffs.size();
  for (std::size_t m = 0; m < n; ++m) {
    double s = a.coeffs[m];
    for (std::size_t k = 1; k <= m; ++k) s -= b.coeffs[k] * q.coeffs[m - k];
    q.coeffs[m] = s / b.coeffs[0];
  }
  return q;
}

Jet pow_nat(const Jet& a, std::uint64_t k) {
  Jet r = constant(1.0, a.base, a.order);
  for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

// exp/ln/sin/cos follow the standard convolution recurrences for composing a
// power series with an analytic primitive.

Jet exp(const Jet& a) {
  Jet w = constant(0.0, a.base, a.order);
  w.coeffs[0] = std::exp(a.coeffs[0]);
  std::size_t n = w.coeffs.size();
  for (std::size_t m = 1; m < n; ++m) {
    double s = 0.0;
    for (std::size_t j = 1; j <= m; ++j)
      s += static_cast<double>(j) * a.coeffs[j] * w.coeffs[m - j];
    w.coeffs[m] = s / static_cast<double>(m);
  }
  return w;
}

Jet ln(const Jet& a) {
  if (a.coeffs[0] <= 0.0) throw EvalError("ln of non-positive argument");
  Jet w = constant(0.0, a.base, a.order);
  w.coeffs[0] = std::log(a.coeffs[0]);
  std::size_t n = w.coeffs.size();
  for (std::size_t m = 1; m < n; ++m) {
    double s = a.coeffs[m] * static_cast<double>(m);
    for (std::size_t j = 1; j < m; ++j)
      s -= static_cast<double>(j) * w.coeffs[j] * a.coeffs[m - j];
    w.coeffs[m] = s / static_cast<double>(m) / a.coeffs[0];
  }
  return w;
}

namespace {
void sincos(const Jet& a, Jet& s, Jet& c) {
  s = constant(0.0, a.base, a.order);
  c = constant(0.0, a.base, a.order);
  s.coeffs[0] = std::sin(a.coeffs[0]);
  c.coeffs[0] = std::cos(a.coeffs[0]);
  std::size_t n = s.coeffs.size();
  for (std::size_t m = 1; m < n; ++m) {
    double ss = 0.0, cs = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      double ja = static_cast<double>(j) * a.coeffs[j];
      ss += ja * c.coeffs[m - j];
      cs += ja * s.coeffs[m - j];
    }
    s.coeffs[m] = ss / static_cast<double>(m);
    c.coeffs[m] = -cs / static_cast<double>(m);
  }
}
}  // namespace

Jet sin(const Jet& a) {
  Jet s, c;
  sincos(a, s, c);
  return s;
}

Jet cos(const Jet& a) {
  Jet s, c;
  sincos(a, s, c);
  return c;
}

Jet compose(const Jet& outer, const Jet& inner) {
  // Horner over the shifted inner series (constant term removed).
  Jet shifted = inner;
  shifted.coeffs[0] = 0.0;
  Jet acc = constant(outer.coeffs.back(), inner.base, inner.order);
  for (int m = outer.order - 1; m >= 0; --m) {
    acc = mul(acc, shifted);
    acc.coeffs[0] += outer.coeffs[static_cast<std::size_t>(m)];
  }
  return acc;
}

}  // namespace jets

namespace {

bool all_zero_above(const Jet& j, std::size_t from) {
  for (std::size_t i = from; i < j.coeffs.size(); ++i)
    if (j.coeffs[i] != 0.0) return false;
  return true;
}

bool is_constant(const Jet& j) { return all_zero_above(j, 1); }

struct JetCtx {
  const std::string& var;
  double at;
  int order;
  const lang::Env& env;
  const lang::Funcs& funcs;
};

Jet jet_rec(const Expr& e, const JetCtx& ctx, int depth);

Jet jet_of_func(const lang::FuncDef& f, const Jet& arg, const JetCtx& ctx, int depth) {
  if (depth >= 64) throw EvalError("function recursion too deep");
  if (is_constant(arg)) {
    lang::Env local{{f.formal, lang::Value::of_real(arg.coeffs[0])}};
    double v = lang::eval_expr(*f.body, local, ctx.funcs).as_double();
    return jets::constant(v, ctx.at, ctx.order);
  }
  static const lang::Env kEmptyEnv;
  JetCtx inner{f.formal, arg.coeffs[0], ctx.order, kEmptyEnv, ctx.funcs};
  Jet outer = jet_rec(*f.body, inner, depth + 1);
  Jet composed = jets::compose(outer, arg);
  composed.base = ctx.at;
  return composed;
}

Jet jet_rec(const Expr& e, const JetCtx& ctx, int depth) {
  switch (e.kind) {
    case ExprKind::Const:
      return jets::constant(e.value, ctx.at, ctx.order);
    case ExprKind::NatConst:
      return jets::constant(static_cast<double>(e.nat), ctx.at, ctx.order);
    case ExprKind::Var: {
      if (e.name == ctx.var) return jets::variable(ctx.at, ctx.order);
      auto it = ctx.env.find(e.name);
      if (it == ctx.env.end()) throw EvalError("unbound variable '" + e.name + "'");
      if (it->second.is_vec()) throw EvalError("vector in scalar context");
      return jets::constant(it->second.as_double(), ctx.at, ctx.order);
    }
    case ExprKind::Neg:
      return jets::neg(jet_rec(*e.args[0], ctx, depth));
    case ExprKind::Add:
      return jets::add(jet_rec(*e.args[0], ctx, depth), jet_rec(*e.args[1], ctx, depth));
    case ExprKind::Sub:
      return jets::sub(jet_rec(*e.args[0], ctx, depth), jet_rec(*e.args[1], ctx, depth));
    case ExprKind::Mul:
      return jets::mul(jet_rec(*e.args[0], ctx, depth), jet_rec(*e.args[1], ctx, depth));
    case ExprKind::Div:
      return jets::div(jet_rec(*e.args[0], ctx, depth), jet_rec(*e.args[1], ctx, depth));
    case ExprKind::Pow: {
      Jet base = jet_rec(*e.args[0], ctx, depth);
      lang::Value k = lang::eval_expr(*e.args[1], ctx.env, ctx.funcs);
      double dk = k.as_double();
      if (dk < 0 || dk != std::floor(dk)) throw EvalError("pow exponent must be a nonnegative integer");
      return jets::pow_nat(base, static_cast<std::uint64_t>(dk));
    }
    case ExprKind::Abs: {
      Jet u = jet_rec(*e.args[0], ctx, depth);
      if (u.coeffs[0] > 0.0) return u;
      if (u.coeffs[0] < 0.0) return jets::neg(u);
      if (ctx.order == 0 || all_zero_above(u, 1)) {
        Jet j = u;
        j.coeffs[0] = std::fabs(j.coeffs[0]);
        return j;
      }
      throw NonSmoothError("abs at its kink (argument is 0)");
    }
    case ExprKind::Min:
    case ExprKind::Max: {
      Jet a = jet_rec(*e.args[0], ctx, depth);
      Jet b = jet_rec(*e.args[1], ctx, depth);
      bool take_a;
      if (a.coeffs[0] != b.coeffs[0]) {
        bool a_smaller = a.coeffs[0] < b.coeffs[0];
        take_a = (e.kind == ExprKind::Min) == a_smaller;
      } else if (a.coeffs == b.coeffs) {
        take_a = true;
      } else if (ctx.order == 0) {
        take_a = true;
      } else {
        throw NonSmoothError("min/max at its kink (arguments equal)");
      }
      return take_a ? a : b;
    }
    case ExprKind::Floor:
    case ExprKind::Ceil: {
      Jet u = jet_rec(*e.args[0], ctx, depth);
      double v = u.coeffs[0];
      double stepped = e.kind == ExprKind::Floor ? std::floor(v) : std::ceil(v);
      if (ctx.order >= 1 && !all_zero_above(u, 1) && v == std::floor(v))
        throw NonSmoothError("floor/ceil at its kink (integer argument)");
      return jets::constant(stepped, ctx.at, ctx.order);
    }
    case ExprKind::Log2: {
      Jet u = jet_rec(*e.args[0], ctx, depth);
      Jet w = jets::ln(u);
      double inv_ln2 = 1.0 / std::log(2.0);
      for (auto& c : w.coeffs) c *= inv_ln2;
      return w;
    }
    case ExprKind::Exp:
      return jets::exp(jet_rec(*e.args[0], ctx, depth));
    case ExprKind::Ln:
      return jets::ln(jet_rec(*e.args[0], ctx, depth));
    case ExprKind::Sin:
      return jets::sin(jet_rec(*e.args[0], ctx, depth));
    case ExprKind::Cos:
      return jets::cos(jet_rec(*e.args[0], ctx, depth));
    case ExprKind::Apply: {
      auto it = ctx.funcs.find(e.name);
      if (it == ctx.funcs.end()) throw EvalError("unknown function '" + e.name + "'");
      Jet arg = jet_rec(*e.args[0], ctx, depth);
      return jet_of_func(it->second, arg, ctx, depth);
    }
    case ExprKind::Index: {
      lang::Value v = lang::eval_expr(e, ctx.env, ctx.funcs);
      return jets::constant(v.as_double(), ctx.at, ctx.order);
    }
    case ExprKind::Iterate: {
      auto it = ctx.funcs.find(e.name);
      if (it == ctx.funcs.end()) throw EvalError("unknown function '" + e.name + "'");
      lang::Value count = lang::eval_expr(*e.args[0], ctx.env, ctx.funcs);
      double dc = count.as_double();
      if (dc < 0 || dc != std::floor(dc))
        throw EvalError("iterate count must be a nonnegative integer");
      Jet v = jet_rec(*e.args[1], ctx, depth);
      for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dc); ++i)
        v = jet_of_func(it->second, v, ctx, depth + 1);
      return v;
    }
  }
  throw EvalError("unhandled expression kind");
}

}  // namespace

Jet jet_eval(const Expr& e, const std::string& var, double at, int order, const lang::Env& env,
             const lang::Funcs& funcs) {
  if (order < 0) throw EvalError("jet order must be nonnegative");
  JetCtx ctx{var, at, order, env, funcs};
  return jet_rec(e, ctx, 0);
}

}  // namespace certinum::calculus
