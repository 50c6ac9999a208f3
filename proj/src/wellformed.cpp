#include "certinum/wellformed.hpp"

#include <set>

namespace certinum::lang {

namespace {

struct Checker {
  const Program& prog;
  std::vector<Diagnostic>& out;
  std::map<std::string, Sort> sorts;  // params + locals assigned so far
  std::set<std::string> bound_indices;

  void diag(Diagnostic::Kind k, std::string msg) { out.push_back({k, std::move(msg)}); }

  StaticSort sort_of(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Const:
        return StaticSort::Real;
      case ExprKind::NatConst:
        return StaticSort::Nat;
      case ExprKind::Var: {
        if (e.name.empty()) {
          diag(Diagnostic::Kind::EmptyName, "variable with empty name");
          return StaticSort::Unknown;
        }
        if (bound_indices.count(e.name)) return StaticSort::Nat;
        auto it = sorts.find(e.name);
        if (it == sorts.end()) {
          diag(Diagnostic::Kind::UnboundVariable, "read of unbound variable '" + e.name + "'");
          return StaticSort::Unknown;
        }
        switch (it->second.kind) {
          case Sort::Kind::Real:
            return StaticSort::Real;
          case Sort::Kind::Nat:
            return StaticSort::Nat;
          case Sort::Kind::Vec:
            return StaticSort::Vec;
          case Sort::Kind::Fun:
            diag(Diagnostic::Kind::BadApply,
                 "function parameter '" + e.name + "' used as a value");
            return StaticSort::Unknown;
        }
        return StaticSort::Unknown;
      }
      case ExprKind::Neg: {
        StaticSort s = sort_of(*e.args[0]);
        if (s == StaticSort::Nat || s == StaticSort::Int) return StaticSort::Int;
        return StaticSort::Real;
      }
      case ExprKind::Add:
      case ExprKind::Sub:
      case ExprKind::Mul: {
        StaticSort a = sort_of(*e.args[0]);
        StaticSort b = sort_of(*e.args[1]);
        bool ints = (a == StaticSort::Nat || a == StaticSort::Int) &&
                    (b == StaticSort::Nat || b == StaticSort::Int);
        if (!ints) return StaticSort::Real;
        if (e.kind != ExprKind::Sub && a == StaticSort::Nat && b == StaticSort::Nat)
          return StaticSort::Nat;
        return StaticSort::Int;
      }
      case ExprKind::Div:
        sort_of(*e.args[0]);
        sort_of(*e.args[1]);
        return StaticSort::Real;
      case ExprKind::Pow: {
        StaticSort base = sort_of(*e.args[0]);
        StaticSort exp = sort_of(*e.args[1]);
        if (exp != StaticSort::Nat && exp != StaticSort::Int)
          diag(Diagnostic::Kind::PowExponentSort, "pow exponent is not integer-sorted");
        if (base == StaticSort::Nat) return StaticSort::Nat;
        if (base == StaticSort::Int) return StaticSort::Int;
        return StaticSort::Real;
      }
      case ExprKind::Abs: {
        StaticSort s = sort_of(*e.args[0]);
        return s == StaticSort::Nat || s == StaticSort::Int ? s : StaticSort::Real;
      }
      case ExprKind::Min:
      case ExprKind::Max: {
        StaticSort a = sort_of(*e.args[0]);
        StaticSort b = sort_of(*e.args[1]);
        auto integerish = [](StaticSort s) {
          return s == StaticSort::Nat || s == StaticSort::Int;
        };
        if (a == StaticSort::Nat && b == StaticSort::Nat) return StaticSort::Nat;
        if (integerish(a) && integerish(b)) return StaticSort::Int;
        return StaticSort::Real;
      }
      case ExprKind::Floor:
      case ExprKind::Ceil:
        sort_of(*e.args[0]);
        return StaticSort::Int;
      case ExprKind::Log2:
      case ExprKind::Exp:
      case ExprKind::Ln:
      case ExprKind::Sin:
      case ExprKind::Cos:
        sort_of(*e.args[0]);
        return StaticSort::Real;
      case ExprKind::Apply: {
        if (e.name.empty()) diag(Diagnostic::Kind::EmptyName, "apply with empty function name");
        auto it = sorts.find(e.name);
        if (it == sorts.end() || it->second.kind != Sort::Kind::Fun)
          diag(Diagnostic::Kind::BadApply,
               "apply of '" + e.name + "' which is not a function parameter");
        sort_of(*e.args[0]);
        return StaticSort::Real;
      }
      case ExprKind::Index: {
        auto it = sorts.find(e.name);
        if (it == sorts.end() || it->second.kind != Sort::Kind::Vec)
          diag(Diagnostic::Kind::BadIndex, "index of '" + e.name + "' which is not a vector");
        StaticSort idx = sort_of(*e.args[0]);
        if (idx != StaticSort::Nat && idx != StaticSort::Int)
          diag(Diagnostic::Kind::SortMismatch, "vector index is not integer-sorted");
        return StaticSort::Real;
      }
      case ExprKind::Iterate: {
        auto it = sorts.find(e.name);
        if (it == sorts.end() || it->second.kind != Sort::Kind::Fun)
          diag(Diagnostic::Kind::BadApply,
               "iterate of '" + e.name + "' which is not a function parameter");
        StaticSort count = sort_of(*e.args[0]);
        if (count != StaticSort::Nat && count != StaticSort::Int)
          diag(Diagnostic::Kind::SortMismatch, "iterate count is not integer-sorted");
        sort_of(*e.args[1]);
        return StaticSort::Real;
      }
    }
    return StaticSort::Unknown;
  }

  void check_cond(const Cond& c) {
    switch (c.kind) {
      case CondKind::Cmp:
        sort_of(*c.lhs);
        sort_of(*c.rhs);
        break;
      case CondKind::Forall:
      case CondKind::Exists: {
        StaticSort b = sort_of(*c.bound);
        if (b != StaticSort::Nat && b != StaticSort::Int)
          diag(Diagnostic::Kind::BadQuantifierBound, "quantifier bound is not integer-sorted");
        bool fresh = bound_indices.insert(c.binder).second;
        check_cond(*c.body);
        if (fresh) bound_indices.erase(c.binder);
        break;
      }
      default:
        for (const auto& k : c.kids) check_cond(*k);
        break;
    }
  }

  Sort local_sort_for(const Expr& rhs) {
    if (rhs.kind == ExprKind::Var) {
      auto it = sorts.find(rhs.name);
      if (it != sorts.end()) return it->second;
    }
    switch (sort_of(rhs)) {
      case StaticSort::Nat:
        return Sort::natural();
      case StaticSort::Vec:
        return Sort::vec(0);
      default:
        return Sort::real();
    }
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Skip:
        break;
      case StmtKind::Assign: {
        if (s.target.empty()) diag(Diagnostic::Kind::EmptyName, "assignment to empty name");
        Sort rhs_sort = local_sort_for(*s.expr);
        auto it = sorts.find(s.target);
        if (it == sorts.end()) {
          sorts[s.target] = rhs_sort;
        } else if (it->second.kind == Sort::Kind::Fun) {
          diag(Diagnostic::Kind::SortMismatch,
               "assignment to function parameter '" + s.target + "'");
        }
        break;
      }
      case StmtKind::VecAssign: {
        auto it = sorts.find(s.target);
        if (it == sorts.end() || it->second.kind != Sort::Kind::Vec)
          diag(Diagnostic::Kind::BadIndex,
               "element assignment to '" + s.target + "' which is not a vector");
        StaticSort idx = sort_of(*s.index);
        if (idx != StaticSort::Nat && idx != StaticSort::Int)
          diag(Diagnostic::Kind::SortMismatch, "vector index is not integer-sorted");
        sort_of(*s.expr);
        break;
      }
      case StmtKind::Seq:
        for (const auto& k : s.seq) check_stmt(*k);
        break;
      case StmtKind::If:
        check_cond(*s.cond);
        check_stmt(*s.then_branch);
        check_stmt(*s.else_branch);
        break;
      case StmtKind::While: {
        check_cond(*s.cond);
        if (!s.invariant || !s.variant) {
          diag(Diagnostic::Kind::MissingAnnotation, "while missing invariant or variant");
        } else {
          check_cond(*s.invariant);
          StaticSort v = sort_of(*s.variant);
          if (v != StaticSort::Nat && v != StaticSort::Int)
            diag(Diagnostic::Kind::VariantSort, "variant expression is not integer-sorted");
        }
        check_stmt(*s.body);
        break;
      }
    }
  }
};

}  // namespace

std::vector<Diagnostic> well_formed(const Program& p) {
  std::vector<Diagnostic> out;
  Checker ck{p, out, {}, {}};
  std::set<std::string> seen;
  for (const auto& param : p.params) {
    if (param.name.empty()) ck.diag(Diagnostic::Kind::EmptyName, "parameter with empty name");
    if (!seen.insert(param.name).second)
      ck.diag(Diagnostic::Kind::NameClash, "duplicate parameter '" + param.name + "'");
    ck.sorts[param.name] = param.sort;
  }
  ck.check_stmt(*p.body);
  return out;
}

}  // namespace certinum::lang
