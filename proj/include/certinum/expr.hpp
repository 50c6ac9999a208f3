#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace certinum::lang {

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

/// Runtime value: a binary64 real, an exact nonnegative integer, or a
/// fixed-length vector of binary64.
struct Value {
  enum class Kind { Real, Nat, Vec };

  Kind kind = Kind::Real;
  double real = 0.0;
  std::uint64_t nat = 0;
  std::vector<double> vec;

  static Value of_real(double r) {
    Value v;
    v.kind = Kind::Real;
    v.real = r;
    return v;
  }
  static Value of_nat(std::uint64_t n) {
    Value v;
    v.kind = Kind::Nat;
    v.nat = n;
    return v;
  }
  static Value of_vec(std::vector<double> xs) {
    Value v;
    v.kind = Kind::Vec;
    v.vec = std::move(xs);
    return v;
  }

  bool is_real() const { return kind == Kind::Real; }
  bool is_nat() const { return kind == Kind::Nat; }
  bool is_vec() const { return kind == Kind::Vec; }

  /// Numeric view of a scalar value (Nat widens exactly below 2^53).
  double as_double() const { return kind == Kind::Nat ? static_cast<double>(nat) : real; }
};

bool operator==(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }

using Env = std::map<std::string, Value>;

/// Named single-argument real function; bodies may refer only to the formal
/// parameter and to other defined functions.
struct FuncDef {
  std::string formal;
  std::shared_ptr<const struct Expr> body;
};

using Funcs = std::map<std::string, FuncDef>;

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
  Const,     // real literal
  NatConst,  // nonnegative integer literal
  Var,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,      // base ^ exponent, exponent integer-sorted (literal or nat expression)
  Abs,
  Min,
  Max,
  Floor,
  Ceil,
  Log2,
  Exp,
  Ln,
  Sin,
  Cos,
  Apply,    // named single-argument function
  Index,    // vector element read v[e]
  Iterate,  // iterate(f, n, e): f applied n times to e
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Const;
  double value = 0.0;       // Const
  std::uint64_t nat = 0;    // NatConst
  std::string name;         // Var / Apply / Index / Iterate
  std::vector<ExprPtr> args;
};

bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

// Construction helpers.
namespace ex {
ExprPtr cnst(double v);
ExprPtr nat(std::uint64_t n);
ExprPtr var(std::string name);
ExprPtr neg(ExprPtr e);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, ExprPtr exponent);
ExprPtr pow(ExprPtr base, std::uint64_t exponent);
ExprPtr abs(ExprPtr e);
ExprPtr min(ExprPtr a, ExprPtr b);
ExprPtr max(ExprPtr a, ExprPtr b);
ExprPtr floor(ExprPtr e);
ExprPtr ceil(ExprPtr e);
ExprPtr log2(ExprPtr e);
ExprPtr exp(ExprPtr e);
ExprPtr ln(ExprPtr e);
ExprPtr sin(ExprPtr e);
ExprPtr cos(ExprPtr e);
ExprPtr apply(std::string fname, ExprPtr arg);
ExprPtr index(std::string vec, ExprPtr i);
ExprPtr iterate(std::string fname, ExprPtr count, ExprPtr seed);
/// nat(e) coercion: floor clamped at zero.
ExprPtr nat_of(ExprPtr e);
}  // namespace ex

/// Free variable names of an expression (function formals excluded).
void collect_vars(const Expr& e, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

enum class CondKind { True, False, Cmp, Not, And, Or, Implies, Forall, Exists };
enum class CmpOp { Lt, Le, Eq, Ne };

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

struct Cond {
  CondKind kind = CondKind::True;
  CmpOp op = CmpOp::Eq;       // Cmp
  ExprPtr lhs, rhs;           // Cmp
  std::vector<CondPtr> kids;  // Not(1), And/Or/Implies(2)
  std::string binder;         // Forall/Exists index name
  ExprPtr bound;              // quantifier bound (integer-sorted)
  CondPtr body;               // quantifier body
};

bool equal(const Cond& a, const Cond& b);
inline bool equal(const CondPtr& a, const CondPtr& b) { return equal(*a, *b); }

namespace cd {
CondPtr truth();
CondPtr falsity();
CondPtr cmp(CmpOp op, ExprPtr l, ExprPtr r);
CondPtr lt(ExprPtr l, ExprPtr r);
CondPtr le(ExprPtr l, ExprPtr r);
CondPtr eq(ExprPtr l, ExprPtr r);
CondPtr ne(ExprPtr l, ExprPtr r);
/// a > b and a >= b are stored as flipped Lt/Le.
CondPtr gt(ExprPtr l, ExprPtr r);
CondPtr ge(ExprPtr l, ExprPtr r);
CondPtr negate(CondPtr c);
CondPtr conj(CondPtr a, CondPtr b);
CondPtr disj(CondPtr a, CondPtr b);
CondPtr implies(CondPtr a, CondPtr b);
CondPtr forall(std::string binder, ExprPtr bound, CondPtr body);
CondPtr exists(std::string binder, ExprPtr bound, CondPtr body);
}  // namespace cd

void collect_vars(const Cond& c, std::vector<std::string>& out);

}  // namespace certinum::lang
