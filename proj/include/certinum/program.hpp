#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "certinum/expr.hpp"

namespace certinum::lang {

// ---------------------------------------------------------------------------
// Sorts and parameters
// ---------------------------------------------------------------------------

struct Sort {
  enum class Kind { Real, Nat, Vec, Fun };
  Kind kind = Kind::Real;
  std::size_t dim = 0;  // Vec only

  static Sort real() { return {Kind::Real, 0}; }
  static Sort natural() { return {Kind::Nat, 0}; }
  static Sort vec(std::size_t n) { return {Kind::Vec, n}; }
  static Sort fun() { return {Kind::Fun, 0}; }
};

bool operator==(const Sort& a, const Sort& b);
std::string to_text(const Sort& s);

struct Param {
  std::string name;
  Sort sort;
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

enum class StmtKind { Skip, Assign, VecAssign, Seq, If, While };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  StmtKind kind = StmtKind::Skip;
  std::string target;          // Assign / VecAssign
  ExprPtr index;               // VecAssign
  ExprPtr expr;                // Assign / VecAssign rhs
  std::vector<StmtPtr> seq;    // Seq
  CondPtr cond;                // If condition / While guard
  StmtPtr then_branch, else_branch;  // If
  CondPtr invariant;           // While (always present)
  ExprPtr variant;             // While (always present)
  StmtPtr body;                // While
};

namespace st {
StmtPtr skip();
StmtPtr assign(std::string name, ExprPtr e);
StmtPtr vec_assign(std::string name, ExprPtr index, ExprPtr e);
StmtPtr seq(std::vector<StmtPtr> stmts);
StmtPtr if_then_else(CondPtr c, StmtPtr then_branch, StmtPtr else_branch);
StmtPtr while_loop(CondPtr guard, CondPtr invariant, ExprPtr variant, StmtPtr body);
}  // namespace st

bool equal(const Stmt& a, const Stmt& b);
inline bool equal(const StmtPtr& a, const StmtPtr& b) { return equal(*a, *b); }

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

struct Program {
  std::string name;
  std::vector<Param> params;
  StmtPtr body;

  const Param* find_param(const std::string& n) const;
};

bool equal(const Program& a, const Program& b);

/// Local variables in order of first assignment, with their inferred sorts.
/// Inference is static: the sort of the first expression assigned to the name.
std::vector<Param> infer_locals(const Program& p);

/// Whiles of the program in AST (execution-structure) order; the position in
/// this list is the loop id used by traces and audits.
std::vector<const Stmt*> collect_loops(const Program& p);

}  // namespace certinum::lang
