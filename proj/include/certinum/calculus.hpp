#pragma once

#include <functional>
#include <string>
#include <vector>

#include "certinum/jet.hpp"

namespace certinum::calculus {

struct DiffConfig {
  /// Finite-difference step policy: h = max(1, |a|) * eps^(1/(n+2)) when
  /// scale-relative, or the fixed absolute step otherwise.
  bool scale_relative_step = true;
  double absolute_step = 1e-4;
  int max_order = 32;
};

/// n-th derivative of the expression in var at a, via jet arithmetic.
double nth_derivative(const lang::Expr& e, const std::string& var, int n, double at,
                      const lang::Env& env = {}, const lang::Funcs& funcs = {});

/// Central binomial finite-difference stencil,
///   h^-n * sum_j (-1)^j C(n,j) f(a + (n/2 - j) h),
/// truncation error O(h^2) for smooth f. Independent oracle for jet results.
double nth_derivative_fd(const std::function<double(double)>& f, int n, double at,
                         const DiffConfig& cfg = {});

struct TaylorPoly {
  double center = 0.0;
  int degree = 0;
  std::vector<double> coeffs;  // coeffs[m] = f^(m)(c) / m!

  double eval(double x) const;
};

TaylorPoly taylor_poly(const lang::Expr& e, const std::string& var, double center, int degree,
                       const lang::Env& env = {}, const lang::Funcs& funcs = {});

struct LagrangeWitness {
  double t = 0.0;        // point strictly between c and x
  double residual = 0.0; // |f(x) - S_{n-1}(x) - f^(n)(t)/n! (x-c)^n|
  bool localized = false;
  bool sign_change = false;  // residual root bracketed (bisection used)
};

/// Search for the Lagrange-remainder witness t between c and x: bisection on
/// g(t) = f(x) - S_{n-1}(x) - f^(n)(t)/n! (x-c)^n when g changes sign on a
/// grid, otherwise the grid argmin of |g|. Not localized when the minimum
/// exceeds tol_t (reported, not fatal).
LagrangeWitness lagrange_witness(const lang::Expr& e, const std::string& var, int n, double c,
                                 double x, double tol_t, const lang::Env& env = {},
                                 const lang::Funcs& funcs = {});

/// Peano remainder h_n(x) = (f(x) - S_n(x)) / (x - c)^n. Requires x != c.
double peano_remainder(const lang::Expr& e, const std::string& var, int n, double c, double x,
                       const lang::Env& env = {}, const lang::Funcs& funcs = {});

struct ProbeReport {
  bool pass = false;
  int order = 0;
  double center = 0.0;
  double threshold = 0.0;
  std::vector<double> radii;
  std::vector<double> maxima;  // max(|h_n(c+r)|, |h_n(c-r)|) per radius
  std::string coverage;
};

/// Default probe schedule: 2^-1 .. 2^-20 scaled by max(1, |c|).
std::vector<double> default_probe_radii(double center, int first_exp = 1, int last_exp = 20);

/// Two-sided decay probe for the Peano remainder. Pass iff the maxima over
/// the last four radii are all <= threshold and the sequence of per-radius
/// maxima is non-increasing after its peak (entries at or below threshold
/// count as floor, absorbing rounding jitter). f(x) and S_n(x) are evaluated
/// in 128-bit floats; binary64 cancellation at the small radii would
/// otherwise swamp the remainder.
ProbeReport peano_limit_probe(const lang::Expr& e, const std::string& var, int n, double c,
                              std::vector<double> radii = {}, double threshold = 1e-6,
                              const lang::Env& env = {}, const lang::Funcs& funcs = {});

struct LeibnizCheck {
  double lhs = 0.0;  // (f g)^(n)(x) from the product jet
  double rhs = 0.0;  // binomial sum assembled from the two factor jets
  double abs_diff = 0.0;
};

/// Contract: |lhs - rhs| <= 32 ulps of max(|lhs|, |rhs|, 1).
LeibnizCheck leibniz_product_check(const lang::Expr& f, const lang::Expr& g,
                                   const std::string& var, int n, double x,
                                   const lang::Env& env = {}, const lang::Funcs& funcs = {});

/// Exact binomial coefficients (n <= 62).
double binomial(int n, int k);

}  // namespace certinum::calculus
