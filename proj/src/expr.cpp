#include "certinum/expr.hpp"

#include <algorithm>
#include <cmath>

#include "certinum/program.hpp"

namespace certinum::lang {

bool operator==(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Real:
      return a.real == b.real;
    case Value::Kind::Nat:
      return a.nat == b.nat;
    case Value::Kind::Vec:
      return a.vec == b.vec;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Expr builders
// ---------------------------------------------------------------------------

namespace {
ExprPtr node(ExprKind k, std::vector<ExprPtr> args = {}, std::string name = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = std::move(args);
  e->name = std::move(name);
  return e;
}
}  // namespace

namespace ex {

ExprPtr cnst(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Const;
  e->value = v;
  return e;
}

ExprPtr nat(std::uint64_t n) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::NatConst;
  e->nat = n;
  return e;
}

ExprPtr var(std::string name) { return node(ExprKind::Var, {}, std::move(name)); }
ExprPtr neg(ExprPtr e) { return node(ExprKind::Neg, {std::move(e)}); }
ExprPtr add(ExprPtr a, ExprPtr b) { return node(ExprKind::Add, {std::move(a), std::move(b)}); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return node(ExprKind::Sub, {std::move(a), std::move(b)}); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return node(ExprKind::Mul, {std::move(a), std::move(b)}); }
ExprPtr div(ExprPtr a, ExprPtr b) { return node(ExprKind::Div, {std::move(a), std::move(b)}); }
ExprPtr pow(ExprPtr base, ExprPtr exponent) {
  return node(ExprKind::Pow, {std::move(base), std::move(exponent)});
}
ExprPtr pow(ExprPtr base, std::uint64_t exponent) {
  return pow(std::move(base), nat(exponent));
}
ExprPtr abs(ExprPtr e) { return node(ExprKind::Abs, {std::move(e)}); }
ExprPtr min(ExprPtr a, ExprPtr b) { return node(ExprKind::Min, {std::move(a), std::move(b)}); }
ExprPtr max(ExprPtr a, ExprPtr b) { return node(ExprKind::Max, {std::move(a), std::move(b)}); }
ExprPtr floor(ExprPtr e) { return node(ExprKind::Floor, {std::move(e)}); }
ExprPtr ceil(ExprPtr e) { return node(ExprKind::Ceil, {std::move(e)}); }
ExprPtr log2(ExprPtr e) { return node(ExprKind::Log2, {std::move(e)}); }
ExprPtr exp(ExprPtr e) { return node(ExprKind::Exp, {std::move(e)}); }
ExprPtr ln(ExprPtr e) { return node(ExprKind::Ln, {std::move(e)}); }
ExprPtr sin(ExprPtr e) { return node(ExprKind::Sin, {std::move(e)}); }
ExprPtr cos(ExprPtr e) { return node(ExprKind::Cos, {std::move(e)}); }
ExprPtr apply(std::string fname, ExprPtr arg) {
  return node(ExprKind::Apply, {std::move(arg)}, std::move(fname));
}
ExprPtr index(std::string vec, ExprPtr i) {
  return node(ExprKind::Index, {std::move(i)}, std::move(vec));
}
ExprPtr iterate(std::string fname, ExprPtr count, ExprPtr seed) {
  return node(ExprKind::Iterate, {std::move(count), std::move(seed)}, std::move(fname));
}
ExprPtr nat_of(ExprPtr e) { return max(floor(std::move(e)), nat(0)); }

}  // namespace ex

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Const:
      // bit-level: distinguishes 0.0 from -0.0, NaN never occurs in literals
      return a.value == b.value && std::signbit(a.value) == std::signbit(b.value);
    case ExprKind::NatConst:
      return a.nat == b.nat;
    default:
      break;
  }
  if (a.name != b.name) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case ExprKind::Var:
      out.push_back(e.name);
      break;
    case ExprKind::Index:
    case ExprKind::Iterate:
      out.push_back(e.name);
      break;
    default:
      break;
  }
  for (const auto& a : e.args) collect_vars(*a, out);
}

// ---------------------------------------------------------------------------
// Cond builders
// ---------------------------------------------------------------------------

namespace cd {

CondPtr truth() {
  auto c = std::make_shared<Cond>();
  c->kind = CondKind::True;
  return c;
}

CondPtr falsity() {
  auto c = std::make_shared<Cond>();
  c->kind = CondKind::False;
  return c;
}

CondPtr cmp(CmpOp op, ExprPtr l, ExprPtr r) {
  auto c = std::make_shared<Cond>();
  c->kind = CondKind::Cmp;
  c->op = op;
  c->lhs = std::move(l);
  c->rhs = std::move(r);
  return c;
}

CondPtr lt(ExprPtr l, ExprPtr r) { return cmp(CmpOp::Lt, std::move(l), std::move(r)); }
CondPtr le(ExprPtr l, ExprPtr r) { return cmp(CmpOp::Le, std::move(l), std::move(r)); }
CondPtr eq(ExprPtr l, ExprPtr r) { return cmp(CmpOp::Eq, std::move(l), std::move(r)); }
CondPtr ne(ExprPtr l, ExprPtr r) { return cmp(CmpOp::Ne, std::move(l), std::move(r)); }
CondPtr gt(ExprPtr l, ExprPtr r) { return lt(std::move(r), std::move(l)); }
CondPtr ge(ExprPtr l, ExprPtr r) { return le(std::move(r), std::move(l)); }

CondPtr negate(CondPtr c) {
  auto n = std::make_shared<Cond>();
  n->kind = CondKind::Not;
  n->kids = {std::move(c)};
  return n;
}

namespace {
CondPtr binary(CondKind k, CondPtr a, CondPtr b) {
  auto c = std::make_shared<Cond>();
  c->kind = k;
  c->kids = {std::move(a), std::move(b)};
  return c;
}
}  // namespace

CondPtr conj(CondPtr a, CondPtr b) { return binary(CondKind::And, std::move(a), std::move(b)); }
CondPtr disj(CondPtr a, CondPtr b) { return binary(CondKind::Or, std::move(a), std::move(b)); }
CondPtr implies(CondPtr a, CondPtr b) {
  return binary(CondKind::Implies, std::move(a), std::move(b));
}

namespace {
CondPtr quant(CondKind k, std::string binder, ExprPtr bound, CondPtr body) {
  auto c = std::make_shared<Cond>();
  c->kind = k;
  c->binder = std::move(binder);
  c->bound = std::move(bound);
  c->body = std::move(body);
  return c;
}
}  // namespace

CondPtr forall(std::string binder, ExprPtr bound, CondPtr body) {
  return quant(CondKind::Forall, std::move(binder), std::move(bound), std::move(body));
}
CondPtr exists(std::string binder, ExprPtr bound, CondPtr body) {
  return quant(CondKind::Exists, std::move(binder), std::move(bound), std::move(body));
}

}  // namespace cd

bool equal(const Cond& a, const Cond& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case CondKind::True:
    case CondKind::False:
      return true;
    case CondKind::Cmp:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    case CondKind::Forall:
    case CondKind::Exists:
      return a.binder == b.binder && equal(*a.bound, *b.bound) && equal(*a.body, *b.body);
    default:
      break;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

void collect_vars(const Cond& c, std::vector<std::string>& out) {
  switch (c.kind) {
    case CondKind::Cmp:
      collect_vars(*c.lhs, out);
      collect_vars(*c.rhs, out);
      break;
    case CondKind::Forall:
    case CondKind::Exists: {
      collect_vars(*c.bound, out);
      std::vector<std::string> inner;
      collect_vars(*c.body, inner);
      for (auto& v : inner)
        if (v != c.binder) out.push_back(std::move(v));
      break;
    }
    default:
      for (const auto& k : c.kids) collect_vars(*k, out);
      break;
  }
}

// ---------------------------------------------------------------------------
// Stmt / Program
// ---------------------------------------------------------------------------

bool operator==(const Sort& a, const Sort& b) {
  return a.kind == b.kind && (a.kind != Sort::Kind::Vec || a.dim == b.dim);
}

std::string to_text(const Sort& s) {
  switch (s.kind) {
    case Sort::Kind::Real:
      return "real";
    case Sort::Kind::Nat:
      return "nat";
    case Sort::Kind::Vec:
      return "vec[" + std::to_string(s.dim) + "]";
    case Sort::Kind::Fun:
      return "fun";
  }
  return "?";
}

namespace st {

StmtPtr skip() {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Skip;
  return s;
}

StmtPtr assign(std::string name, ExprPtr e) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Assign;
  s->target = std::move(name);
  s->expr = std::move(e);
  return s;
}

StmtPtr vec_assign(std::string name, ExprPtr index, ExprPtr e) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::VecAssign;
  s->target = std::move(name);
  s->index = std::move(index);
  s->expr = std::move(e);
  return s;
}

StmtPtr seq(std::vector<StmtPtr> stmts) {
  if (stmts.size() == 1) return stmts.front();
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Seq;
  s->seq = std::move(stmts);
  return s;
}

StmtPtr if_then_else(CondPtr c, StmtPtr then_branch, StmtPtr else_branch) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::If;
  s->cond = std::move(c);
  s->then_branch = std::move(then_branch);
  s->else_branch = else_branch ? std::move(else_branch) : skip();
  return s;
}

StmtPtr while_loop(CondPtr guard, CondPtr invariant, ExprPtr variant, StmtPtr body) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::While;
  s->cond = std::move(guard);
  s->invariant = std::move(invariant);
  s->variant = std::move(variant);
  s->body = std::move(body);
  return s;
}

}  // namespace st

bool equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StmtKind::Skip:
      return true;
    case StmtKind::Assign:
      return a.target == b.target && equal(*a.expr, *b.expr);
    case StmtKind::VecAssign:
      return a.target == b.target && equal(*a.index, *b.index) && equal(*a.expr, *b.expr);
    case StmtKind::Seq: {
      if (a.seq.size() != b.seq.size()) return false;
      for (std::size_t i = 0; i < a.seq.size(); ++i)
        if (!equal(*a.seq[i], *b.seq[i])) return false;
      return true;
    }
    case StmtKind::If:
      return equal(*a.cond, *b.cond) && equal(*a.then_branch, *b.then_branch) &&
             equal(*a.else_branch, *b.else_branch);
    case StmtKind::While:
      return equal(*a.cond, *b.cond) && equal(*a.invariant, *b.invariant) &&
             equal(*a.variant, *b.variant) && equal(*a.body, *b.body);
  }
  return false;
}

const Param* Program::find_param(const std::string& n) const {
  for (const auto& p : params)
    if (p.name == n) return &p;
  return nullptr;
}

bool equal(const Program& a, const Program& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].name != b.params[i].name || !(a.params[i].sort == b.params[i].sort))
      return false;
  return equal(*a.body, *b.body);
}

namespace {

// Shallow static sort of an expression given parameter/local sorts so far.
Sort static_sort(const Expr& e, const std::map<std::string, Sort>& sorts) {
  switch (e.kind) {
    case ExprKind::Const:
      return Sort::real();
    case ExprKind::NatConst:
      return Sort::natural();
    case ExprKind::Var: {
      auto it = sorts.find(e.name);
      return it != sorts.end() ? it->second : Sort::real();
    }
    case ExprKind::Add:
    case ExprKind::Mul: {
      Sort a = static_sort(*e.args[0], sorts), b = static_sort(*e.args[1], sorts);
      if (a.kind == Sort::Kind::Nat && b.kind == Sort::Kind::Nat) return Sort::natural();
      return Sort::real();
    }
    default:
      return Sort::real();
  }
}

void infer_stmt(const Stmt& s, const Program& p, std::map<std::string, Sort>& sorts,
                std::vector<Param>& out) {
  switch (s.kind) {
    case StmtKind::Assign:
      if (!p.find_param(s.target) && !sorts.count(s.target)) {
        Sort sort = static_sort(*s.expr, sorts);
        if (s.expr->kind == ExprKind::Var) {
          auto it = sorts.find(s.expr->name);
          if (it != sorts.end()) sort = it->second;
        }
        sorts[s.target] = sort;
        out.push_back({s.target, sort});
      }
      break;
    case StmtKind::VecAssign:
      break;  // target must already exist as a vector
    case StmtKind::Seq:
      for (const auto& k : s.seq) infer_stmt(*k, p, sorts, out);
      break;
    case StmtKind::If:
      infer_stmt(*s.then_branch, p, sorts, out);
      infer_stmt(*s.else_branch, p, sorts, out);
      break;
    case StmtKind::While:
      infer_stmt(*s.body, p, sorts, out);
      break;
    default:
      break;
  }
}

void loops_of(const Stmt& s, std::vector<const Stmt*>& out) {
  switch (s.kind) {
    case StmtKind::Seq:
      for (const auto& k : s.seq) loops_of(*k, out);
      break;
    case StmtKind::If:
      loops_of(*s.then_branch, out);
      loops_of(*s.else_branch, out);
      break;
    case StmtKind::While:
      out.push_back(&s);
      loops_of(*s.body, out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<Param> infer_locals(const Program& p) {
  std::map<std::string, Sort> sorts;
  for (const auto& param : p.params) sorts[param.name] = param.sort;
  std::vector<Param> out;
  std::map<std::string, Sort> local_sorts;
  // seed with params so locals do not shadow them
  infer_stmt(*p.body, p, sorts, out);
  (void)local_sorts;
  return out;
}

std::vector<const Stmt*> collect_loops(const Program& p) {
  std::vector<const Stmt*> out;
  loops_of(*p.body, out);
  return out;
}

}  // namespace certinum::lang
