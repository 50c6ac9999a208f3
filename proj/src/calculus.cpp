#include "certinum/calculus.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "certinum/methods.hpp"
#include "certinum/util.hpp"

namespace certinum::calculus {

using lang::EvalError;
using lang::Expr;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  // Pascal's rule keeps everything exact in binary64 for n <= 62
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
  return row[static_cast<std::size_t>(k)];
}

double nth_derivative(const Expr& e, const std::string& var, int n, double at,
                      const lang::Env& env, const lang::Funcs& funcs) {
  Jet j = jet_eval(e, var, at, n, env, funcs);
  return j.derivative(n);
}

double nth_derivative_fd(const std::function<double(double)>& f, int n, double at,
                         const DiffConfig& cfg) {
  if (n == 0) return f(at);
  double h = cfg.scale_relative_step
                 ? std::max(1.0, std::fabs(at)) *
                       std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (n + 2))
                 : cfg.absolute_step;
  double sum = 0.0;
  double half = static_cast<double>(n) / 2.0;
  for (int j = 0; j <= n; ++j) {
    double term = binomial(n, j) * f(at + (half - j) * h);
    sum += (j % 2 == 0) ? term : -term;
  }
  double hn = 1.0;
  for (int i = 0; i < n; ++i) hn *= h;
  return sum / hn;
}

double TaylorPoly::eval(double x) const {
  double dx = x - center;
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * dx + coeffs[i];
  return acc;
}

TaylorPoly taylor_poly(const Expr& e, const std::string& var, double center, int degree,
                       const lang::Env& env, const lang::Funcs& funcs) {
  Jet j = jet_eval(e, var, center, degree, env, funcs);
  TaylorPoly p;
  p.center = center;
  p.degree = degree;
  p.coeffs = j.coeffs;
  return p;
}

LagrangeWitness lagrange_witness(const Expr& e, const std::string& var, int n, double c,
                                 double x, double tol_t, const lang::Env& env,
                                 const lang::Funcs& funcs) {
  if (n < 1) throw EvalError("lagrange witness needs n >= 1");
  if (x == c) throw EvalError("lagrange witness needs x != c");
  TaylorPoly s = taylor_poly(e, var, c, n - 1, env, funcs);
  double fx = lang::eval_expr(e, [&] {
                lang::Env full = env;
                full[var] = lang::Value::of_real(x);
                return full;
              }(), funcs)
                  .as_double();
  double target = fx - s.eval(x);
  double step = x - c;
  double step_n = 1.0;
  for (int i = 0; i < n; ++i) step_n *= step;
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  auto g = [&](double t) {
    return target - nth_derivative(e, var, n, t, env, funcs) / fact * step_n;
  };

  double lo = std::min(c, x), hi = std::max(c, x);
  constexpr int kGrid = 257;
  double width = hi - lo;
  LagrangeWitness w;
  double best_t = 0.0, best_g = std::numeric_limits<double>::infinity();
  double prev_t = 0.0, prev_g = 0.0;
  for (int i = 1; i < kGrid; ++i) {
    // open interval: skip the endpoints, t must be strictly between c and x
    double t = lo + width * i / kGrid;
    double gt = g(t);
    if (std::fabs(gt) < best_g) {
      best_g = std::fabs(gt);
      best_t = t;
    }
    if (i > 1 && ((prev_g < 0 && gt > 0) || (prev_g > 0 && gt < 0))) {
      auto res = methods::bisect_fn(g, prev_t, t, 0.0);
      w.t = res.xmid;
      w.residual = std::fabs(g(res.xmid));
      w.sign_change = true;
      w.localized = true;
      return w;
    }
    prev_t = t;
    prev_g = gt;
  }
  w.t = best_t;
  w.residual = best_g;
  w.sign_change = false;
  w.localized = best_g <= tol_t;
  return w;
}

double peano_remainder(const Expr& e, const std::string& var, int n, double c, double x,
                       const lang::Env& env, const lang::Funcs& funcs) {
  if (x == c) throw EvalError("peano remainder needs x != c");
  TaylorPoly s = taylor_poly(e, var, c, n, env, funcs);
  lang::Env full = env;
  full[var] = lang::Value::of_real(x);
  double fx = lang::eval_expr(e, full, funcs).as_double();
  double dx = x - c;
  double dxn = 1.0;
  for (int i = 0; i < n; ++i) dxn *= dx;
  return (fx - s.eval(x)) / dxn;
}

std::vector<double> default_probe_radii(double center, int first_exp, int last_exp) {
  double scale = std::max(1.0, std::fabs(center));
  std::vector<double> radii;
  for (int k = first_exp; k <= last_exp; ++k) radii.push_back(std::ldexp(scale, -k));
  return radii;
}

namespace {

// h_n at one probe point, f and S_n evaluated in quad precision.
double probe_h(const Expr& e, const std::string& var, const std::vector<double>& coeffs, int n,
               double c, double x, const lang::Env& env, const lang::Funcs& funcs) {
  lang::Env full = env;
  full[var] = lang::Value::of_real(x);
  __float128 fx = lang::eval_expr_quad(e, full, funcs);
  __float128 dx = static_cast<__float128>(x) - static_cast<__float128>(c);
  __float128 s = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) s = s * dx + static_cast<__float128>(coeffs[i]);
  __float128 dxn = 1;
  for (int i = 0; i < n; ++i) dxn *= dx;
  return static_cast<double>((fx - s) / dxn);
}

}  // namespace

ProbeReport peano_limit_probe(const Expr& e, const std::string& var, int n, double c,
                              std::vector<double> radii, double threshold,
                              const lang::Env& env, const lang::Funcs& funcs) {
  if (radii.empty()) radii = default_probe_radii(c);
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1])) throw EvalError("probe radii must be strictly decreasing");

  Jet j = jet_eval(e, var, c, n, env, funcs);  // non-smooth points error out here

  ProbeReport rep;
  rep.order = n;
  rep.center = c;
  rep.threshold = threshold;
  rep.radii = radii;
  for (double r : radii) {
    double hp = probe_h(e, var, j.coeffs, n, c, c + r, env, funcs);
    double hm = probe_h(e, var, j.coeffs, n, c, c - r, env, funcs);
    rep.maxima.push_back(std::max(std::fabs(hp), std::fabs(hm)));
  }

  std::size_t last4 = rep.maxima.size() >= 4 ? rep.maxima.size() - 4 : 0;
  bool tail_ok = true;
  for (std::size_t i = last4; i < rep.maxima.size(); ++i)
    tail_ok = tail_ok && rep.maxima[i] <= threshold;

  std::size_t peak = 0;
  for (std::size_t i = 1; i < rep.maxima.size(); ++i)
    if (rep.maxima[i] > rep.maxima[peak]) peak = i;
  bool monotone = true;
  for (std::size_t i = peak + 1; i < rep.maxima.size(); ++i) {
    // at or below the pass threshold the samples sit on the rounding floor
    if (rep.maxima[i] <= threshold) continue;
    if (rep.maxima[i] > rep.maxima[i - 1]) monotone = false;
  }

  rep.pass = tail_ok && monotone;
  std::ostringstream cov;
  cov << "two-sided sampling at " << radii.size() << " dyadic radii in [" << radii.back()
      << ", " << radii.front() << "]; sampled evidence only, no claim over all reals";
  rep.coverage = cov.str();
  return rep;
}

LeibnizCheck leibniz_product_check(const Expr& f, const Expr& g, const std::string& var, int n,
                                   double x, const lang::Env& env, const lang::Funcs& funcs) {
  Jet jf = jet_eval(f, var, x, n, env, funcs);
  Jet jg = jet_eval(g, var, x, n, env, funcs);
  Jet prod = jets::mul(jf, jg);
  LeibnizCheck out;
  out.lhs = prod.derivative(n);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k)
    sum += binomial(n, k) * jf.derivative(k) * jg.derivative(n - k);
  out.rhs = sum;
  out.abs_diff = std::fabs(out.lhs - out.rhs);
  return out;
}

}  // namespace certinum::calculus
