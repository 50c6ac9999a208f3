#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "certinum/program.hpp"

namespace certinum::lang {

struct ParseError : std::runtime_error {
  std::size_t line = 0;
  std::size_t column = 0;
  ParseError(std::size_t line_, std::size_t col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        column(col_) {}
};

/// Parse a program source:
///   program NAME (p1::sort, ...) = "stmts"
/// Statements: skip | x := e | v[e] := e | if c then s [else s] fi
///   | while c invariant c variant e do s od
/// Sorts: real | nat | vec[N] | fun. Comments: -- to end of line.
/// Every while must carry an explicit invariant and variant.
Program parse_program(const std::string& text);

/// Standalone expression / condition parsers (CLI flag values, tests).
ExprPtr parse_expr(const std::string& text);
CondPtr parse_cond(const std::string& text);

// ---------------------------------------------------------------------------
// Specification files: a program plus requires / ensures / witness stanzas
// and optional sampling hints.
// ---------------------------------------------------------------------------

struct WitnessClause {
  enum class Kind {
    RootRefine,  // NAME := root(f, lo, hi): high-precision bisection refinement
    Expression,  // NAME := expr, evaluated in the final state
  };
  std::string name;
  Kind kind = Kind::Expression;
  std::string func;      // RootRefine: function-sorted parameter name
  ExprPtr lo, hi;        // RootRefine bracket expressions over the final state
  ExprPtr expr;          // Expression witness
};

struct SampleRange {
  std::string param;
  double lo = 0.0, hi = 0.0;
};

struct InstanceBinding {
  std::string param;
  // exactly one of these is meaningful, keyed by the parameter's sort
  Value value;
  FuncDef func;
  bool is_func = false;
};

struct SpecFile {
  Program program;
  CondPtr requires_cond;
  CondPtr ensures_cond;
  std::vector<WitnessClause> witnesses;
  /// `instance a = 1, b = 1.5, f = x^2 - 2` lines: explicit argument tuples.
  std::vector<std::vector<InstanceBinding>> instances;
  /// `sample a in [lo, hi]` lines: per-parameter random ranges.
  std::vector<SampleRange> ranges;
};

SpecFile parse_spec_file(const std::string& text);

/// Function literal helper: the formal is the unique free variable of the
/// body ("x" when the body is closed).
FuncDef make_funcdef(const ExprPtr& body);

}  // namespace certinum::lang
