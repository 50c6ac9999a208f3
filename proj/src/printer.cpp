#include "certinum/printer.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace certinum::lang {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// Precedence levels: additive 1, multiplicative 2, unary 3, power 4, atom 5.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_expr(const Expr& e, std::ostream& os, int parent_prec) {
  int prec = precedence(e);
  bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (e.kind) {
    case ExprKind::Const: {
      double v = e.value;
      if (v < 0 || (v == 0 && std::signbit(v))) {
        os << '-';
        os << format_real(-v);
      } else {
        os << format_real(v);
      }
      break;
    }
    case ExprKind::NatConst:
      os << e.nat;
      break;
    case ExprKind::Var:
      os << e.name;
      break;
    case ExprKind::Neg:
      os << '-';
      print_expr(*e.args[0], os, 3);
      break;
    case ExprKind::Add:
      print_expr(*e.args[0], os, 1);
      os << " + ";
      print_expr(*e.args[1], os, 2);
      break;
    case ExprKind::Sub:
      print_expr(*e.args[0], os, 1);
      os << " - ";
      print_expr(*e.args[1], os, 2);
      break;
    case ExprKind::Mul:
      print_expr(*e.args[0], os, 2);
      os << " * ";
      print_expr(*e.args[1], os, 3);
      break;
    case ExprKind::Div:
      print_expr(*e.args[0], os, 2);
      os << " / ";
      print_expr(*e.args[1], os, 3);
      break;
    case ExprKind::Pow:
      print_expr(*e.args[0], os, 5);
      os << '^';
      print_expr(*e.args[1], os, 5);
      break;
    case ExprKind::Abs:
      os << "abs(";
      print_expr(*e.args[0], os, 0);
      os << ')';
      break;
    case ExprKind::Min:
    case ExprKind::Max:
      os << (e.kind == ExprKind::Min ? "min(" : "max(");
      print_expr(*e.args[0], os, 0);
      os << ", ";
      print_expr(*e.args[1], os, 0);
      os << ')';
      break;
    case ExprKind::Floor:
    case ExprKind::Ceil:
    case ExprKind::Log2:
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Sin:
    case ExprKind::Cos: {
      const char* fn = e.kind == ExprKind::Floor  ? "floor"
                       : e.kind == ExprKind::Ceil ? "ceil"
                       : e.kind == ExprKind::Log2 ? "log2"
                       : e.kind == ExprKind::Exp  ? "exp"
                       : e.kind == ExprKind::Ln   ? "ln"
                       : e.kind == ExprKind::Sin  ? "sin"
                                                  : "cos";
      os << fn << '(';
      print_expr(*e.args[0], os, 0);
      os << ')';
      break;
    }
    case ExprKind::Apply:
      os << e.name << '(';
      print_expr(*e.args[0], os, 0);
      os << ')';
      break;
    case ExprKind::Index:
      os << e.name << '[';
      print_expr(*e.args[0], os, 0);
      os << ']';
      break;
    case ExprKind::Iterate:
      os << "iterate(" << e.name << ", ";
      print_expr(*e.args[0], os, 0);
      os << ", ";
      print_expr(*e.args[1], os, 0);
      os << ')';
      break;
  }
  if (parens) os << ')';
}

// Cond precedence: implies 1, or 2, and 3, not 4, atom 5.
int precedence(const Cond& c) {
  switch (c.kind) {
    case CondKind::Implies:
      return 1;
    case CondKind::Or:
      return 2;
    case CondKind::And:
      return 3;
    case CondKind::Not:
      return 4;
    default:
      return 5;
  }
}

void print_cond(const Cond& c, std::ostream& os, int parent_prec) {
  int prec = precedence(c);
  bool parens = prec < parent_prec || c.kind == CondKind::Forall || c.kind == CondKind::Exists;
  if (parens) os << '(';
  switch (c.kind) {
    case CondKind::True:
      os << "true";
      break;
    case CondKind::False:
      os << "false";
      break;
    case CondKind::Cmp: {
      print_expr(*c.lhs, os, 0);
      const char* op = c.op == CmpOp::Lt   ? " < "
                       : c.op == CmpOp::Le ? " <= "
                       : c.op == CmpOp::Eq ? " = "
                                           : " != ";
      os << op;
      print_expr(*c.rhs, os, 0);
      break;
    }
    case CondKind::Not:
      os << "not ";
      print_cond(*c.kids[0], os, 4);
      break;
    case CondKind::And:
      print_cond(*c.kids[0], os, 3);
      os << " and ";
      print_cond(*c.kids[1], os, 4);
      break;
    case CondKind::Or:
      print_cond(*c.kids[0], os, 2);
      os << " or ";
      print_cond(*c.kids[1], os, 3);
      break;
    case CondKind::Implies:
      print_cond(*c.kids[0], os, 2);
      os << " --> ";
      print_cond(*c.kids[1], os, 1);
      break;
    case CondKind::Forall:
    case CondKind::Exists:
      os << (c.kind == CondKind::Forall ? "forall " : "exists ") << c.binder << " < ";
      print_expr(*c.bound, os, 0);
      os << ". ";
      print_cond(*c.body, os, 0);
      break;
  }
  if (parens) os << ')';
}

void indent_to(std::ostream& os, int n) {
  for (int i = 0; i < n; ++i) os << ' ';
}

void print_stmt(const Stmt& s, std::ostream& os, int indent) {
  switch (s.kind) {
    case StmtKind::Skip:
      indent_to(os, indent);
      os << "skip";
      break;
    case StmtKind::Assign:
      indent_to(os, indent);
      os << s.target << " := ";
      print_expr(*s.expr, os, 0);
      break;
    case StmtKind::VecAssign:
      indent_to(os, indent);
      os << s.target << '[';
      print_expr(*s.index, os, 0);
      os << "] := ";
      print_expr(*s.expr, os, 0);
      break;
    case StmtKind::Seq: {
      bool first = true;
      for (const auto& k : s.seq) {
        if (!first) os << ";\n";
        print_stmt(*k, os, indent);
        first = false;
      }
      break;
    }
    case StmtKind::If:
      indent_to(os, indent);
      os << "if ";
      print_cond(*s.cond, os, 0);
      os << " then\n";
      print_stmt(*s.then_branch, os, indent + 2);
      if (s.else_branch->kind != StmtKind::Skip) {
        os << '\n';
        indent_to(os, indent);
        os << "else\n";
        print_stmt(*s.else_branch, os, indent + 2);
      }
      os << '\n';
      indent_to(os, indent);
      os << "fi";
      break;
    case StmtKind::While:
      indent_to(os, indent);
      os << "while ";
      print_cond(*s.cond, os, 0);
      os << '\n';
      indent_to(os, indent);
      os << "invariant ";
      print_cond(*s.invariant, os, 0);
      os << '\n';
      indent_to(os, indent);
      os << "variant ";
      print_expr(*s.variant, os, 0);
      os << '\n';
      indent_to(os, indent);
      os << "do\n";
      print_stmt(*s.body, os, indent + 2);
      os << '\n';
      indent_to(os, indent);
      os << "od";
      break;
  }
}

}  // namespace

std::string to_text(const Expr& e) {
  std::ostringstream os;
  print_expr(e, os, 0);
  return os.str();
}

std::string to_text(const Cond& c) {
  std::ostringstream os;
  print_cond(c, os, 0);
  return os.str();
}

std::string to_text(const Stmt& s, int indent) {
  std::ostringstream os;
  print_stmt(s, os, indent);
  return os.str();
}

std::string to_text(const Program& p) {
  std::ostringstream os;
  os << "program " << p.name << " (";
  bool first = true;
  for (const auto& param : p.params) {
    if (!first) os << ", ";
    os << param.name << "::" << to_text(param.sort);
    first = false;
  }
  os << ") =\n\"";
  print_stmt(*p.body, os, 1);
  os << "\"\n";
  return os.str();
}

std::string to_text(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Real:
      return format_real(v.real);
    case Value::Kind::Nat:
      return std::to_string(v.nat);
    case Value::Kind::Vec: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.vec.size(); ++i) {
        if (i) s += ", ";
        s += format_real(v.vec[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

}  // namespace certinum::lang
